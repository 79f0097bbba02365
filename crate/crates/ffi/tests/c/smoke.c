#include <stdio.h>
#include <string.h>

#include "spintorsion.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  StForm *t = NULL;
  CHECK(st_form_parse("1 2 3 : 1\n", 3, &t) == ST_STATUS_OK);
  StHolonomy h;
  CHECK(st_holonomy(t, ST_REP_MODE_VECTOR, &h) == ST_STATUS_OK);
  CHECK(h.dim == 3 && h.semisimple && h.compact);

  char *text = NULL;
  CHECK(st_form_to_string(t, &text) == ST_STATUS_OK);
  CHECK(strstr(text, "1 2 3") != NULL);
  st_string_free(text);
  st_form_free(t);

  StForm *bad = NULL;
  CHECK(st_form_parse("1 2 : nope\n", 0, &bad) == ST_STATUS_PARSE);
  CHECK(bad == NULL && st_last_error() != NULL);

  const char *point[4] = {"1", "0", "0", "0"};
  StSolution *sol = NULL;
  CHECK(st_aw_solve("1", "1", point, false, &sol) == ST_STATUS_OK);
  CHECK(st_solution_unique(sol) && st_solution_residual_zero(sol));
  st_solution_free(sol);

  printf("ok %s\n", st_version());
  return 0;
}
