#include <stdio.h>
#include <string.h>
#include "idem2.h"

int main(void) {
    const char *spec_json = "{\"n\":6,\"roles\":{\"2\":\"Q\",\"3\":\"R\"}}";
    Idem2Spec *spec = NULL;
    Idem2Matrix *m = NULL;
    Idem2Spec *back = NULL;
    char *json = NULL;
    bool idem = false;

    if (idem2_spec_from_json(spec_json, &spec) != IDEM2_STATUS_OK) return 1;
    if (idem2_construct(spec, &m) != IDEM2_STATUS_OK) return 2;
    if (idem2_matrix_is_idempotent(m, &idem) != IDEM2_STATUS_OK || !idem) return 3;
    if (idem2_classify(m, &back) != IDEM2_STATUS_OK) return 4;
    if (idem2_spec_to_json(back, &json) != IDEM2_STATUS_OK) return 5;
    if (strstr(json, "\"2\":\"Q\"") == NULL) return 6;
    idem2_string_free(json);

    if (idem2_classify(NULL, &back) != IDEM2_STATUS_NULL_POINTER) return 7;
    fprintf(stderr, "%s\n", idem2_last_error());

    idem2_spec_free(back);
    idem2_matrix_free(m);
    idem2_spec_free(spec);
    printf("ok\n");
    return 0;
}
