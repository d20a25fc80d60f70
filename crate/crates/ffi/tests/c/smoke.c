#include <stdio.h>
#include <string.h>
#include "laxforge.h"

#define EXPECT(cond) do { if (!(cond)) { fprintf(stderr, "line %d: %s\n", __LINE__, #cond); return 1; } } while (0)

int main(void) {
    LfAlgebra *alg = NULL;
    EXPECT(lf_algebra_new(3, 2, &alg) == LF_STATUS_OK);
    EXPECT(lf_algebra_dim(alg) == 5);

    LfSigma *sigma = NULL;
    EXPECT(lf_sigma_vector(alg, &sigma) == LF_STATUS_OK);

    char *report = NULL;
    EXPECT(lf_verify(sigma, "ybe,intertwine", 1, &report) == LF_STATUS_OK);
    EXPECT(strstr(report, "\"passed\": true") != NULL);
    lf_string_free(report);

    char *val = NULL;
    EXPECT(lf_spectral_eval(alg, LF_SPECTRAL_KIND_UNTWISTED, "2", "1/3", &val) == LF_STATUS_OK);
    lf_string_free(val);

    LfAlgebra *bad = NULL;
    EXPECT(lf_algebra_new(1, 0, &bad) == LF_STATUS_UNSUPPORTED_RANK);
    EXPECT(lf_last_error() != NULL);

    lf_sigma_free(sigma);
    lf_algebra_free(alg);
    puts("ok");
    return 0;
}
