#include <math.h>
#include <stdio.h>
#include "tailsurf.h"

int main(void) {
    TsCode *code = NULL;
    if (ts_code_new(TS_LAYOUT_STANDARD, 4, 4, &code) != TS_STATUS_OK) return 1;
    size_t n = 0, m = 0;
    if (ts_code_size(code, &n, &m) != TS_STATUS_OK) return 1;
    TsPureSummary s;
    if (ts_code_pure_summary(code, &s) != TS_STATUS_OK) return 1;
    double p = 0.0;
    if (ts_hashing_bound(INFINITY, &p) != TS_STATUS_OK) return 1;
    TsCode *bad = NULL;
    TsStatus st = ts_code_new(TS_LAYOUT_ROTATED, 0, 3, &bad);
    if (ts_last_error_message() == NULL) return 1;
    ts_code_free(code);
    printf("n=%zu d_y=%zu p_c=%.6f err=%d\n", n, s.d_y, p, (int)st);
    return 0;
}
