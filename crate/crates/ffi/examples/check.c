#include <stdio.h>
#include <stdlib.h>

#include "order_extension.h"

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long len = ftell(f);
    rewind(f);
    char *buf = malloc(len + 1);
    if (fread(buf, 1, len, f) != (size_t)len) { fclose(f); free(buf); return NULL; }
    buf[len] = 0;
    fclose(f);
    return buf;
}

int main(int argc, char **argv) {
    if (argc != 2) {
        fprintf(stderr, "usage: %s PROBLEM_FILE\n", argv[0]);
        return 1;
    }
    char *text = slurp(argv[1]);
    if (!text) { perror(argv[1]); return 1; }

    OeProblem *p = NULL;
    char msg[256];
    if (oe_problem_parse(text, &p) != OE_STATUS_OK) {
        oe_last_error_message(msg, sizeof msg);
        fprintf(stderr, "error: %s\n", msg);
        free(text);
        return 1;
    }
    free(text);

    size_t n = oe_problem_size(p);
    size_t cert[64];
    OeCheckReport r;
    OeStatus st = oe_check(p, &r, cert, 64);
    if (st != OE_STATUS_OK) {
        oe_last_error_message(msg, sizeof msg);
        fprintf(stderr, "error: %s\n", msg);
        oe_problem_free(p);
        return 1;
    }
    printf("order-extension %s, %zu elements\n", oe_version(), n);
    printf("exists=%d in_sigma=%d in_sigma_star=%d unique=%d\n",
           r.exists, r.in_sigma, r.in_sigma_star, r.unique);
    char label[64];
    if (!r.exists) {
        printf("certificate:");
        for (size_t i = 0; i < r.certificate_len; i++) {
            oe_problem_label(p, cert[i], label, sizeof label, NULL);
            printf(" %s", label);
        }
        printf("\n");
    } else {
        size_t ranks[64];
        oe_extend(p, ranks, 64);
        for (size_t i = 0; i < n; i++) {
            oe_problem_label(p, i, label, sizeof label, NULL);
            printf("%s:%zu ", label, ranks[i]);
        }
        printf("\n");
    }
    oe_problem_free(p);
    return r.exists ? 0 : 2;
}
