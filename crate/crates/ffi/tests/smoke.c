#include <stdio.h>
#include <string.h>
#include "morphinject.h"

static int fail(const char *what) {
    const char *msg = mi_last_error_message();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    MiProfile *profile = NULL;
    if (mi_profile_builtin("hi", &profile) != MI_STATUS_OK) return fail("profile");

    char *joined = NULL;
    if (mi_join(profile, "नदी", "यों", 0, &joined) != MI_STATUS_OK) return fail("join");
    int ok = strcmp(joined, "नदियों") == 0;
    mi_string_free(joined);

    char cls = 0;
    if (mi_classify("लड़का", "m", "count", &cls) != MI_STATUS_OK) return fail("classify");
    ok = ok && cls == 'D';

    MiProfile *missing = NULL;
    ok = ok && mi_profile_builtin("xx", &missing) == MI_STATUS_UNKNOWN_PROFILE;
    ok = ok && mi_last_error_message() != NULL;

    mi_profile_free(profile);
    printf("%s\n", ok ? "ok" : "mismatch");
    return ok ? 0 : 1;
}
