"""Driver synthesis for the execution sandbox.

For each (problem, code) pair the runner builds a standalone program:
the code under test plus a generated main that reads the canonical input
text (one argument per line), calls the problem's function, and prints
the canonical rendering of the return value. Drivers never import this
package; everything they need is emitted as source.
"""

from __future__ import annotations

from .problems import Problem
from .values import ValueType

PY_HELPERS = '''
import json as _bs_json
import sys as _bs_sys


def _bs_render(value, kind):
    bad = "<invalid " + repr(value) + ">"
    if kind == "integer":
        if isinstance(value, bool) or not isinstance(value, int):
            return bad
        return str(value)
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return bad
        return repr(float(value))
    if kind == "boolean":
        if not isinstance(value, bool):
            return bad
        return "true" if value else "false"
    if kind == "string":
        if not isinstance(value, str):
            return bad
        return _bs_json.dumps(value, ensure_ascii=False)
    if kind == "list-of-integers":
        if not isinstance(value, list) or any(
            isinstance(v, bool) or not isinstance(v, int) for v in value
        ):
            return bad
        return "[" + ", ".join(str(v) for v in value) + "]"
    if kind == "list-of-floats":
        if not isinstance(value, list) or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) for v in value
        ):
            return bad
        return "[" + ", ".join(repr(float(v)) for v in value) + "]"
    return bad


def _bs_main():
    param_kinds = _BS_PARAM_KINDS
    lines = _bs_sys.stdin.read().split("\\n")
    args = [_bs_json.loads(lines[i]) for i in range(len(param_kinds))]
    result = {function_name}(*args)
    _bs_sys.stdout.write(_bs_render(result, _BS_RETURN_KIND) + "\\n")


_bs_main()
'''

C_HELPERS = r'''
/* ---- generated harness ---- */

static char *bs_read_line(void) {
    size_t cap = 256, len = 0;
    char *buf = (char *)malloc(cap);
    int ch;
    if (!buf) exit(90);
    while ((ch = fgetc(stdin)) != EOF && ch != '\n') {
        if (len + 2 > cap) {
            cap *= 2;
            buf = (char *)realloc(buf, cap);
            if (!buf) exit(90);
        }
        buf[len++] = (char)ch;
    }
    buf[len] = 0;
    return buf;
}

static int bs_parse_int(const char *s) {
    return (int)strtol(s, NULL, 10);
}

static double bs_parse_double(const char *s) {
    return strtod(s, NULL);
}

static int bs_parse_bool(const char *s) {
    while (*s == ' ') s++;
    return strncmp(s, "true", 4) == 0;
}

static char *bs_parse_string(const char *s) {
    size_t cap = strlen(s) + 1;
    char *out = (char *)malloc(cap);
    size_t n = 0;
    const char *p = s;
    if (!out) exit(90);
    while (*p && *p != '"') p++;
    if (*p == '"') p++;
    while (*p && *p != '"') {
        char c = *p++;
        if (c == '\\' && *p) {
            char e = *p++;
            switch (e) {
                case 'n': c = '\n'; break;
                case 't': c = '\t'; break;
                case 'r': c = '\r'; break;
                case 'b': c = '\b'; break;
                case 'f': c = '\f'; break;
                case 'u': {
                    char hex[5] = {0, 0, 0, 0, 0};
                    int i;
                    for (i = 0; i < 4 && *p; i++) hex[i] = *p++;
                    c = (char)strtol(hex, NULL, 16);
                    break;
                }
                default: c = e; break;
            }
        }
        out[n++] = c;
    }
    out[n] = 0;
    return out;
}

static int *bs_parse_int_list(const char *s, int *out_len) {
    int cap = 8, n = 0;
    int *xs = (int *)malloc(cap * sizeof(int));
    const char *p = s;
    if (!xs) exit(90);
    while (*p && *p != '[') p++;
    if (*p == '[') p++;
    for (;;) {
        char *end;
        long v;
        while (*p == ' ' || *p == ',') p++;
        if (*p == 0 || *p == ']') break;
        v = strtol(p, &end, 10);
        if (end == p) break;
        if (n == cap) {
            cap *= 2;
            xs = (int *)realloc(xs, cap * sizeof(int));
            if (!xs) exit(90);
        }
        xs[n++] = (int)v;
        p = end;
    }
    *out_len = n;
    return xs;
}

static double *bs_parse_double_list(const char *s, int *out_len) {
    int cap = 8, n = 0;
    double *xs = (double *)malloc(cap * sizeof(double));
    const char *p = s;
    if (!xs) exit(90);
    while (*p && *p != '[') p++;
    if (*p == '[') p++;
    for (;;) {
        char *end;
        double v;
        while (*p == ' ' || *p == ',') p++;
        if (*p == 0 || *p == ']') break;
        v = strtod(p, &end);
        if (end == p) break;
        if (n == cap) {
            cap *= 2;
            xs = (double *)realloc(xs, cap * sizeof(double));
            if (!xs) exit(90);
        }
        xs[n++] = v;
        p = end;
    }
    *out_len = n;
    return xs;
}

/* Shortest decimal form that parses back to the same double, formatted
 * the same way Python's repr formats floats. */
static void bs_format_double(double v, char *out) {
    char buf[64];
    char digits[32];
    int prec, nd = 0, neg, exp10, dp, i;
    const char *p;
    char *w = out;
    if (isnan(v)) { strcpy(out, "nan"); return; }
    if (isinf(v)) { strcpy(out, v < 0 ? "-inf" : "inf"); return; }
    for (prec = 1; prec <= 17; prec++) {
        snprintf(buf, sizeof buf, "%.*e", prec - 1, v);
        if (strtod(buf, NULL) == v) break;
    }
    neg = buf[0] == '-';
    p = buf + neg;
    for (; *p && *p != 'e'; p++) {
        if (*p != '.') digits[nd++] = *p;
    }
    exp10 = (*p == 'e') ? atoi(p + 1) : 0;
    while (nd > 1 && digits[nd - 1] == '0') nd--;
    digits[nd] = 0;
    dp = exp10 + 1;
    if (neg) *w++ = '-';
    if (dp >= -3 && dp <= 16) {
        if (dp <= 0) {
            *w++ = '0';
            *w++ = '.';
            for (i = 0; i < -dp; i++) *w++ = '0';
            for (i = 0; i < nd; i++) *w++ = digits[i];
        } else if (dp >= nd) {
            for (i = 0; i < nd; i++) *w++ = digits[i];
            for (i = 0; i < dp - nd; i++) *w++ = '0';
            *w++ = '.';
            *w++ = '0';
        } else {
            for (i = 0; i < dp; i++) *w++ = digits[i];
            *w++ = '.';
            for (i = dp; i < nd; i++) *w++ = digits[i];
        }
        *w = 0;
    } else {
        *w++ = digits[0];
        if (nd > 1) {
            *w++ = '.';
            for (i = 1; i < nd; i++) *w++ = digits[i];
        }
        *w++ = 'e';
        *w++ = exp10 < 0 ? '-' : '+';
        {
            int mag = exp10 < 0 ? -exp10 : exp10;
            char tmp[8];
            int t = 0;
            while (mag > 0) { tmp[t++] = (char)('0' + mag % 10); mag /= 10; }
            while (t < 2) tmp[t++] = '0';
            while (t > 0) *w++ = tmp[--t];
        }
        *w = 0;
    }
}

static void bs_print_string(const char *s) {
    putchar('"');
    if (s) {
        for (; *s; s++) {
            unsigned char c = (unsigned char)*s;
            switch (c) {
                case '"': fputs("\\\"", stdout); break;
                case '\\': fputs("\\\\", stdout); break;
                case '\n': fputs("\\n", stdout); break;
                case '\r': fputs("\\r", stdout); break;
                case '\t': fputs("\\t", stdout); break;
                case '\b': fputs("\\b", stdout); break;
                case '\f': fputs("\\f", stdout); break;
                default:
                    if (c < 0x20) printf("\\u%04x", c);
                    else putchar(c);
            }
        }
    }
    putchar('"');
}
'''

_C_RESULT_DECL = {
    ValueType.INTEGER: "int",
    ValueType.FLOAT: "double",
    ValueType.BOOLEAN: "int",
    ValueType.STRING: "char *",
}


def build_python_driver(code: str, problem: Problem) -> str:
    sig = problem.signature
    helpers = PY_HELPERS.replace("{function_name}", problem.function_name)
    prelude = (
        f"_BS_PARAM_KINDS = {[p.type.value for p in sig.parameters]!r}\n"
        f"_BS_RETURN_KIND = {sig.return_type.value!r}\n"
    )
    return code + "\n\n" + prelude + helpers


def build_c_driver(code: str, problem: Problem) -> str:
    sig = problem.signature
    includes = (
        "#include <stdio.h>\n"
        "#include <stdlib.h>\n"
        "#include <string.h>\n"
        "#include <math.h>\n"
    )

    parse_lines = []
    call_args = []
    for i, param in enumerate(sig.parameters):
        line_var = f"bs_line{i}"
        parse_lines.append(f"    char *{line_var} = bs_read_line();")
        if param.type is ValueType.INTEGER:
            parse_lines.append(f"    int {param.name} = bs_parse_int({line_var});")
            call_args.append(param.name)
        elif param.type is ValueType.FLOAT:
            parse_lines.append(f"    double {param.name} = bs_parse_double({line_var});")
            call_args.append(param.name)
        elif param.type is ValueType.BOOLEAN:
            parse_lines.append(f"    int {param.name} = bs_parse_bool({line_var});")
            call_args.append(param.name)
        elif param.type is ValueType.STRING:
            parse_lines.append(f"    char *{param.name} = bs_parse_string({line_var});")
            call_args.append(param.name)
        elif param.type is ValueType.LIST_OF_INTEGERS:
            parse_lines.append(f"    int {param.name}_len = 0;")
            parse_lines.append(
                f"    int *{param.name} = bs_parse_int_list({line_var}, &{param.name}_len);"
            )
            call_args.append(param.name)
            call_args.append(f"{param.name}_len")
        elif param.type is ValueType.LIST_OF_FLOATS:
            parse_lines.append(f"    int {param.name}_len = 0;")
            parse_lines.append(
                f"    double *{param.name} = bs_parse_double_list({line_var}, &{param.name}_len);"
            )
            call_args.append(param.name)
            call_args.append(f"{param.name}_len")

    call = f"{problem.function_name}({', '.join(call_args)})"
    ret = sig.return_type
    body = [f"    {_C_RESULT_DECL[ret]} bs_result = {call};"]
    if ret is ValueType.INTEGER:
        body.append('    printf("%d\\n", bs_result);')
    elif ret is ValueType.FLOAT:
        body.append("    char bs_out[64];")
        body.append("    bs_format_double(bs_result, bs_out);")
        body.append('    printf("%s\\n", bs_out);')
    elif ret is ValueType.BOOLEAN:
        body.append('    printf("%s\\n", bs_result ? "true" : "false");')
    elif ret is ValueType.STRING:
        body.append("    bs_print_string(bs_result);")
        body.append('    printf("\\n");')

    main = "int main(void) {\n" + "\n".join(parse_lines + body) + "\n    return 0;\n}\n"
    return includes + "\n" + code + "\n" + C_HELPERS + "\n" + main
