#include <stdio.h>
#include "fourquad.h"

int main(void) {
    FqGroup *g = NULL;
    FqReport *r = NULL;
    size_t order = 0, classes = 0;
    int pass = -1;
    FqClassification cls;
    if (fq_group_load("H8_regular", &g) != FQ_STATUS_OK) {
        fprintf(stderr, "%s\n", fq_last_error());
        return 1;
    }
    fq_group_order(g, &order);
    fq_group_class_count(g, &classes);
    fq_lefschetz(g, &pass);
    if (fq_full(g, 65537, 0, &r) != FQ_STATUS_OK) {
        fprintf(stderr, "%s\n", fq_last_error());
        return 1;
    }
    fq_report_classification(r, &cls);
    printf("order %zu classes %zu lefschetz %d class %d\n", order, classes, pass, (int)cls);
    fq_report_free(r);
    fq_group_free(g);
    return 0;
}
