#include <math.h>
#include <stdio.h>
#include <string.h>

#include "dirac_families.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    DfSpectrum *s = NULL;
    CHECK(df_spectrum_new(1, "1/4", 2, &s) == DF_STATUS_OK);
    CHECK(df_spectrum_len(s) == 5);
    double value;
    uint64_t mult;
    CHECK(df_spectrum_entry(s, 0, &value, &mult) == DF_STATUS_OK);
    CHECK(fabs(value + 1.75) < 1e-15 && mult == 1);
    CHECK(df_spectrum_entry(s, 5, &value, &mult) == DF_STATUS_OUT_OF_RANGE);
    df_spectrum_free(s);

    CHECK(df_spectrum_new(0, "", 2, &s) == DF_STATUS_INVALID_INPUT);
    CHECK(df_last_error_message() != NULL);

    int64_t flow = 0;
    CHECK(df_exact_flow("[[\"1/2\"], [\"3/2\"]]", 3, &flow) == DF_STATUS_OK && flow == 1);

    size_t even = 0, odd = 0;
    CHECK(df_bar_ranks(3, "1,2,3:1", &even, &odd) == DF_STATUS_OK && even == 3 && odd == 3);

    char *text = NULL;
    CHECK(df_family_ch_torus(2, &text) == DF_STATUS_OK);
    CHECK(strcmp(text, "-y1*y2") == 0);
    df_string_free(text);

    printf("ok\n");
    return 0;
}
