/* cc -I crates/ffi/include crates/ffi/examples/smoke.c target/debug/libpkp_ffi.a -lpthread -ldl -lm */
#include <stdio.h>
#include "pkp.h"

int main(void) {
    const char *json = "{\"capacity\":30,\"items\":[{\"profit\":2,\"weight\":1},"
                       "{\"profit\":12,\"weight\":10},{\"profit\":-11,\"weight\":10},"
                       "{\"profit\":10,\"weight\":10},{\"profit\":10,\"weight\":10},"
                       "{\"profit\":10,\"weight\":10},{\"profit\":-1,\"weight\":10}]}";
    PkpInstance *inst = NULL;
    if (pkp_instance_from_json(json, &inst) != PKP_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", pkp_last_error());
        return 1;
    }
    PkpAlgorithm algos[3] = {PKP_ALGORITHM_EXACT, PKP_ALGORITHM_GREEDY, PKP_ALGORITHM_FPTAS};
    for (int i = 0; i < 3; i++) {
        PkpSolution *sol = NULL;
        uint64_t num = algos[i] == PKP_ALGORITHM_FPTAS ? 1 : 0;
        uint64_t den = algos[i] == PKP_ALGORITHM_FPTAS ? 10 : 0;
        if (pkp_solve(inst, algos[i], num, den, &sol) != PKP_STATUS_OK) {
            fprintf(stderr, "solve: %s\n", pkp_last_error());
            return 1;
        }
        size_t idx[16];
        size_t n = pkp_solution_len(sol);
        pkp_solution_indices(sol, idx, 16);
        printf("algo %d value %s items", (int)algos[i], pkp_solution_value(sol));
        for (size_t k = 0; k < n; k++) printf(" %zu", idx[k]);
        printf("\n");
        pkp_solution_free(sol);
    }
    PkpSolution *bad = NULL;
    PkpStatus st = pkp_solve(inst, PKP_ALGORITHM_FPTAS, 3, 2, &bad);
    printf("eps 3/2 -> status %d (%s)\n", (int)st, pkp_last_error());
    pkp_instance_free(inst);
    return 0;
}
