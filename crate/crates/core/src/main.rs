fn main() {
    std::process::exit(spintorsion::cli::main_with(std::env::args_os()));
}
