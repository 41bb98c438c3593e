"""Command-line front end.

Jobs are line-oriented documents with bracketed sections.  Polynomial
values use explicit operators only (no implicit multiplication); rationals
are written p/q; 1-forms pair a ring expression with a basis token
(dx/y, dt/t, or dt<k>/t<k> and dt<k> on residue charts).  Hyper jobs are
JSON page files.  Output is JSON with sorted keys, byte-identical across
runs for identical input.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import polyq as P
from .cohomology import (TruncationWindow, _spanning_monomials,
                         gauge_invariance_check, twisted_cohomology,
                         verify_chain_map)
from .curvering import CurveSpec, Form1, TorusRing, dlog, make_curve
from .errors import (DegenerationViolated, NotAUnit, NotClosed, NotStabilized,
                     ParseError, TwistcohError, ValidationError)
from .hyperspec import TwoTermPage, hyper_report, load_page
from .logforms import Chart, LogForm, MPoly, is_pole_free, residue

_MODES = ("cohomology", "gm", "gauge-check", "residue", "hyper")
_SECTIONS = {"curve": ("f", "invert"), "twist": ("omega",),
             "gm": ("lambda",), "gauge": ("g",),
             "compute": ("max_weight", "span"),
             "chart": ("n", "l"), "form": ("omega",)}

_COMPUTE_FAILURES = (NotStabilized, NotAUnit, NotClosed, DegenerationViolated)


@dataclass
class JobSpec:
    mode: str
    payload: dict = field(default_factory=dict)
    max_weight: int = 60
    span: int = 3
    output: str = "json"


# -- tokenizer -----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<dxy>dx/y)"
    r"|(?P<dlogk>dt(?P<k1>\d+)/t(?P<k2>\d+))"
    r"|(?P<dlogt>dt/t)"
    r"|(?P<dtk>dt(?P<k3>\d+))"
    r"|(?P<rat>\d+/\d+)"
    r"|(?P<int>\d+)"
    r"|(?P<tk>t\d+)"
    r"|(?P<name>[xyt])"
    r"|(?P<op>[-+*^(),])")

_FORM_KINDS = ("dxy", "dlogt", "dlogk", "dtk")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text, line, col0):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos],
                             line, col0 + pos, expected=("token",))
        kind = m.lastgroup
        if kind in ("k1", "k2", "k3"):
            kind = "dlogk" if m.group("dlogk") else "dtk"
        if kind == "dlogk" and m.group("k1") != m.group("k2"):
            raise ParseError("mismatched log basis indices in %r" % m.group(),
                             line, col0 + pos, expected=("dt<k>/t<k>",))
        if kind != "ws":
            text_tok = m.group()
            if kind == "op":
                kind = text_tok
            toks.append(_Token(kind, text_tok, line, col0 + pos))
        pos = m.end()
    toks.append(_Token("end", "", line, col0 + len(text)))
    return toks


# -- expression parser ---------------------------------------------------

class _Alg:
    """Value algebra for expression evaluation: constants and named
    variables with optional negative powers for bare variables."""

    def __init__(self, const, variables, var_pow=None):
        self.const = const
        self.variables = variables
        self.var_pow = var_pow

    def var(self, tok):
        if tok.text not in self.variables:
            raise ParseError("unknown variable %r" % tok.text,
                             tok.line, tok.col, expected=sorted(self.variables))
        return self.variables[tok.text]

    def power(self, tok, k):
        if self.var_pow is None or tok.text not in self.variables:
            return None
        return self.var_pow(tok.text, k)


def _numeric_alg():
    return _Alg(const=lambda c: c, variables={})


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self, ahead=0):
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self):
        tok = self.peek()
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok.kind != kind:
            self.err((kind,))
        return self.next()

    def err(self, expected):
        tok = self.peek()
        what = "end of value" if tok.kind == "end" else "%r" % tok.text
        raise ParseError("unexpected %s" % what, tok.line, tok.col,
                         expected=expected)

    def at_end(self):
        return self.peek().kind == "end"

    # scalar grammar: expr := term (("+"|"-") term)*; term := unary ("*"
    # unary)*; unary := sign* power; power := atom ("^" ["-"] int)*
    def parse_expr(self, alg):
        v = self.parse_term(alg)
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            w = self.parse_term(alg)
            v = v + w if op == "+" else v - w
        return v

    def parse_term(self, alg):
        v = self.parse_unary(alg)
        while (self.peek().kind == "*"
               and self.peek(1).kind not in _FORM_KINDS):
            self.next()
            v = v * self.parse_unary(alg)
        return v

    def parse_unary(self, alg):
        sign = 1
        while self.peek().kind in ("+", "-"):
            if self.next().kind == "-":
                sign = -sign
        v = self.parse_power(alg)
        return v if sign == 1 else v * -1

    def parse_power(self, alg):
        tok = self.peek()
        base_tok = None
        if tok.kind == "(":
            self.next()
            v = self.parse_expr(alg)
            self.expect(")")
        elif tok.kind == "int":
            self.next()
            v = alg.const(Fraction(int(tok.text)))
        elif tok.kind == "rat":
            self.next()
            v = alg.const(Fraction(tok.text))
        elif tok.kind in ("name", "tk"):
            self.next()
            base_tok = tok
            v = alg.var(tok)
        else:
            self.err(("integer", "rational", "variable", "("))
        while self.peek().kind == "^":
            self.next()
            neg = False
            if self.peek().kind == "-":
                self.next()
                neg = True
            etok = self.expect("int")
            k = -int(etok.text) if neg else int(etok.text)
            if base_tok is not None:
                w = alg.power(base_tok, k)
                if w is not None:
                    v = w
                    base_tok = None
                    continue
            if k < 0:
                raise ParseError("negative exponent on a non-variable base",
                                 etok.line, etok.col,
                                 expected=("nonnegative integer",))
            w = alg.const(Fraction(1))
            for _ in range(k):
                w = w * v
            v = w
            base_tok = None
        return v

    def parse_form(self, alg):
        """Sum of <scalar> [*] <basis-token> terms; a bare scalar must be
        zero.  Returns list of (coefficient, basis token or None)."""
        terms = []
        while True:
            sign = 1
            while self.peek().kind in ("+", "-"):
                if self.next().kind == "-":
                    sign = -sign
            if self.peek().kind in _FORM_KINDS:
                coeff = alg.const(Fraction(sign))
                btok = self.next()
            else:
                coeff = self.parse_term(alg) * sign
                if self.peek().kind == "*":
                    self.next()
                if self.peek().kind in _FORM_KINDS:
                    btok = self.next()
                else:
                    btok = None
            terms.append((coeff, btok))
            if self.peek().kind in ("+", "-"):
                continue
            break
        if not self.at_end():
            self.err(("+", "-", "end of value"))
        return terms


# -- document scanning ---------------------------------------------------

def _scan_sections(document):
    """name -> {key: (value text, line, column of value)} preserving input
    order of sections."""
    sections = {}
    current = None
    for ln, raw in enumerate(document.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("unterminated section header",
                                 ln, raw.index("[") + 1, expected=("]",))
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise ParseError("unknown section [%s]" % name,
                                 ln, raw.index("[") + 1,
                                 expected=sorted(_SECTIONS))
            if name in sections:
                raise ParseError("duplicate section [%s]" % name,
                                 ln, raw.index("[") + 1, expected=())
            current = sections.setdefault(name, {})
            continue
        if current is None:
            raise ParseError("key outside any section", ln, 1,
                             expected=("[section]",))
        if "=" not in line:
            raise ParseError("expected key = value", ln, 1, expected=("=",))
        key, _, _ = raw.partition("=")
        key_name = key.strip()
        section_name = next(n for n, s in sections.items() if s is current)
        if key_name not in _SECTIONS[section_name]:
            raise ParseError("unknown key %r in [%s]" % (key_name, section_name),
                             ln, 1, expected=sorted(_SECTIONS[section_name]))
        if key_name in current:
            raise ParseError("duplicate key %r" % key_name, ln, 1, expected=())
        value = raw.partition("=")[2]
        current[key_name] = (value, ln, len(key) + 2)
    return sections


def _require(sections, name, key):
    if name not in sections:
        raise ParseError("missing section [%s]" % name, 1, 1,
                         expected=("[%s]" % name,))
    if key not in sections[name]:
        raise ParseError("missing key %r in [%s]" % (key, name), 1, 1,
                         expected=(key,))
    return sections[name][key]


def _value_parser(entry):
    value, ln, col = entry
    return _Parser(_tokenize(value, ln, col + 1))


def _parse_fraction(entry):
    pr = _value_parser(entry)
    v = pr.parse_expr(_numeric_alg())
    if not pr.at_end():
        pr.err(("end of value",))
    return v


def _parse_int(entry, key):
    v = _parse_fraction(entry)
    if v.denominator != 1:
        raise ParseError("%s must be an integer" % key, entry[1], entry[2],
                         expected=("integer",))
    return int(v)


def _poly_from_entry(entry):
    """Univariate polynomial in x as a coefficient tuple."""
    pr = _value_parser(entry)
    alg = _Alg(const=lambda c: MPoly.const(1, c),
               variables={"x": MPoly.var(1, 1)})
    v = pr.parse_expr(alg)
    if not pr.at_end():
        pr.err(("end of value",))
    degree = max((e[0] for e in v.coeffs), default=-1)
    return P.trim(tuple(v.coeffs.get((i,), Fraction(0))
                        for i in range(degree + 1)))


def _ring_alg(ring):
    if ring.model == "torus":
        return _Alg(const=ring.const, variables={"t": ring.t()},
                    var_pow=lambda name, k: ring.t(k))

    def var_pow(name, k):
        if name == "x":
            return ring.monomial(i=k) if k >= 0 else ring.monomial(p=-k)
        return ring.monomial(j=k) if k >= 0 else ring.monomial(q=-k)

    return _Alg(const=ring.const,
                variables={"x": ring.x(), "y": ring.y()}, var_pow=var_pow)


def _parse_ring_element(entry, ring):
    pr = _value_parser(entry)
    v = pr.parse_expr(_ring_alg(ring))
    if not pr.at_end():
        pr.err(("end of value",))
    return v


def _parse_form1(entry, ring):
    pr = _value_parser(entry)
    terms = pr.parse_form(_ring_alg(ring))
    want = "dxy" if ring.model == "curve" else "dlogt"
    total = ring.zero()
    for coeff, btok in terms:
        if btok is None:
            if isinstance(coeff, Fraction):
                coeff = ring.const(coeff)
            if not coeff.is_zero():
                raise ParseError("scalar term without a basis token",
                                 entry[1], entry[2], expected=(want,))
            continue
        if btok.kind != want:
            raise ParseError("wrong basis token %r for this ring" % btok.text,
                             btok.line, btok.col, expected=(want,))
        if isinstance(coeff, Fraction):
            coeff = ring.const(coeff)
        total = total + coeff
    return Form1(total)


def _parse_log_form(entry, chart):
    pr = _value_parser(entry)
    n, l = chart.n, chart.l
    variables = {"t%d" % i: MPoly.var(n, i) for i in range(1, n + 1)}
    alg = _Alg(const=lambda c: MPoly.const(n, c), variables=variables)
    terms = pr.parse_form(alg)
    total = LogForm.zero(chart, 1)
    for coeff, btok in terms:
        if btok is None:
            if not coeff.is_zero():
                raise ParseError("scalar term without a basis token",
                                 entry[1], entry[2], expected=("dt<k>",))
            continue
        if btok.kind == "dlogk":
            k = int(btok.text[2:btok.text.index("/")])
            if not 1 <= k <= l:
                raise ParseError("t%d is not a log coordinate" % k,
                                 btok.line, btok.col,
                                 expected=("index <= %d" % l,))
        elif btok.kind == "dtk":
            k = int(btok.text[2:])
            if not 1 <= k <= n:
                raise ParseError("t%d is outside the chart" % k,
                                 btok.line, btok.col,
                                 expected=("index <= %d" % n,))
            # dt_k = t_k (dt_k/t_k) on log coordinates.
            if k <= l:
                coeff = coeff.times_var(k)
        else:
            raise ParseError("basis token %r is not valid on a chart"
                             % btok.text, btok.line, btok.col,
                             expected=("dt<k>/t<k>", "dt<k>"))
        total = total + LogForm(chart, 1, {(k,): coeff})
    return total


def _parse_invert(entry):
    value, ln, col = entry
    names = [s.strip() for s in value.split(",") if s.strip()]
    bad = set(names) - {"x", "y"}
    if bad:
        raise ParseError("cannot invert %s" % sorted(bad), ln, col + 1,
                         expected=("x", "y"))
    return frozenset(names)


# -- job assembly --------------------------------------------------------

def parse_job(document, mode=None):
    stripped = document.lstrip()
    if stripped.startswith("{"):
        inferred = "hyper"
        payload = {"page": _page_from_text(document)}
        sections = {}
    else:
        sections = _scan_sections(document)
        if "chart" in sections or "form" in sections:
            inferred = "residue"
        elif "gauge" in sections:
            inferred = "gauge-check"
        elif "gm" in sections:
            inferred = "gm"
        else:
            inferred = "cohomology"
        payload = _payload_from_sections(inferred, sections)
    if mode is not None and mode != inferred:
        raise ValidationError("document describes a %s job, not %s"
                              % (inferred, mode))
    job = JobSpec(mode=inferred, payload=payload)
    if "compute" in sections:
        comp = sections["compute"]
        if "max_weight" in comp:
            job.max_weight = _parse_int(comp["max_weight"], "max_weight")
        if "span" in comp:
            job.span = _parse_int(comp["span"], "span")
    if not (job.max_weight >= 1 and job.span >= 2):
        raise ValidationError("need max_weight >= 1 and span >= 2")
    return job


def _payload_from_sections(mode, sections):
    if mode == "residue":
        n = _parse_int(_require(sections, "chart", "n"), "n")
        l = _parse_int(_require(sections, "chart", "l"), "l")
        try:
            chart = Chart(n, l)
        except ValueError as exc:
            raise ValidationError(str(exc))
        form = _parse_log_form(_require(sections, "form", "omega"), chart)
        return {"chart": chart, "form": form}
    if mode == "gm" or (mode == "gauge-check" and "gm" in sections):
        lam = _parse_fraction(_require(sections, "gm", "lambda"))
        ring = TorusRing()
        omega = Form1(ring.const(-lam))
        payload = {"ring": ring, "omega": omega, "lambda": lam}
    else:
        f = _poly_from_entry(_require(sections, "curve", "f"))
        inverted = frozenset()
        if "invert" in sections.get("curve", {}):
            inverted = _parse_invert(sections["curve"]["invert"])
        try:
            ring = make_curve(CurveSpec(f, inverted))
        except ValueError as exc:
            raise ValidationError(str(exc))
        omega = _parse_form1(_require(sections, "twist", "omega"), ring)
        payload = {"ring": ring, "omega": omega}
    if mode == "gauge-check":
        payload["g"] = _parse_ring_element(_require(sections, "gauge", "g"),
                                           payload["ring"])
    return payload


def _page_from_text(document):
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, expected=("JSON",))
    dims = doc.get("dims", ())
    if len(dims) != 4:
        raise ValidationError("dims must have four entries")
    from .hyperspec import _matrix_from_json
    d00, d01, d10, d11 = (int(d) for d in dims)
    d1 = _matrix_from_json(doc.get("d1", []), d10, d00, "d1")
    d1p = _matrix_from_json(doc.get("d1p", []), d11, d01, "d1p")
    return TwoTermPage(d00, d01, d10, d11, d1, d1p)


# -- rendering back to documents -----------------------------------------

def _render_scalar(s):
    if s.ring.model == "torus":
        return s.to_str()
    parts = []
    if s.a:
        parts.append(P.to_str(s.a))
    if s.b:
        parts.append("(%s)*y" % P.to_str(s.b))
    out = " + ".join(parts) or "0"
    if s.p or s.q:
        out = "(%s)" % out
        if s.p:
            out += "*x^-%d" % s.p
        if s.q:
            out += "*y^-%d" % s.q
    return out


def _render_form1(form):
    if form.is_zero():
        return "0"
    return "(%s)*%s" % (_render_scalar(form.coeff), form.basis_str())


def _render_log_form(form):
    if form.is_zero():
        return "0"
    l = form.chart.l
    parts = []
    for (k,) in sorted(form.terms):
        basis = "dt%d/t%d" % (k, k) if k <= l else "dt%d" % k
        parts.append("(%s)*%s" % (form.terms[(k,)].to_str(), basis))
    return " + ".join(parts)


def render_job(job):
    """Canonical document; parse_job(render_job(job)) == job."""
    if job.mode == "hyper":
        page = job.payload["page"]
        doc = {"dims": [page.dim00, page.dim01, page.dim10, page.dim11],
               "d1": [[str(e) for e in page.d1.row(i)]
                      for i in range(page.d1.rows)],
               "d1p": [[str(e) for e in page.d1p.row(i)]
                       for i in range(page.d1p.rows)]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    lines = []
    if job.mode == "residue":
        chart = job.payload["chart"]
        lines += ["[chart]", "n = %d" % chart.n, "l = %d" % chart.l,
                  "[form]", "omega = %s" % _render_log_form(job.payload["form"])]
    else:
        ring = job.payload["ring"]
        if ring.model == "torus":
            lines += ["[gm]", "lambda = %s" % job.payload["lambda"]]
        else:
            lines += ["[curve]", "f = %s" % P.to_str(ring.f)]
            if ring.inverted:
                lines.append("invert = %s" % ",".join(sorted(ring.inverted)))
            lines += ["[twist]", "omega = %s" % _render_form1(job.payload["omega"])]
        if job.mode == "gauge-check":
            lines += ["[gauge]", "g = %s" % _render_scalar(job.payload["g"])]
    lines += ["[compute]", "max_weight = %d" % job.max_weight,
              "span = %d" % job.span]
    return "\n".join(lines) + "\n"


# -- execution -----------------------------------------------------------

def _report_payload(report):
    return {"h0": {"dim": report.h0_dim,
                   "basis": [s.to_str() for s in report.h0_basis]},
            "h1": {"dim": report.h1_dim,
                   "basis": [w.to_str() for w in report.h1_basis]},
            "stabilized_at": report.stabilized_at,
            "windows": [list(w) for w in report.windows]}


def run_job(job):
    """Execute a validated job; returns the report as a plain dict."""
    window = TruncationWindow(n_max=job.max_weight,
                              stabilization_span=job.span)
    if job.mode in ("cohomology", "gm"):
        report = twisted_cohomology(job.payload["ring"],
                                    job.payload["omega"], window)
        out = {"mode": job.mode}
        if job.mode == "gm":
            out["lambda"] = str(job.payload["lambda"])
        out.update(_report_payload(report))
        return out
    if job.mode == "gauge-check":
        ring = job.payload["ring"]
        psi1, g = job.payload["omega"], job.payload["g"]
        samples = _spanning_monomials(ring, 6)
        ok, counter = verify_chain_map(ring, psi1, g, samples)
        r1, r2, equal = gauge_invariance_check(ring, psi1, g, window)
        out = {"mode": job.mode,
               "psi1": {"h0_dim": r1.h0_dim, "h1_dim": r1.h1_dim},
               "psi2": {"h0_dim": r2.h0_dim, "h1_dim": r2.h1_dim},
               "equal": equal,
               "chain_map": ok}
        if counter is not None:
            out["counterexample"] = counter.to_str()
        return out
    if job.mode == "residue":
        form = job.payload["form"]
        return {"mode": job.mode,
                "residues": [r.to_str() for r in residue(form)],
                "pole_free": is_pole_free(form)}
    report = hyper_report(job.payload["page"])
    return {"mode": "hyper", "h0": report.h0, "h1": report.h1,
            "h2": report.h2, "e2_01": report.e2_01}


def _format_output(doc, output):
    if output == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                emit("%s.%s" % (prefix, k) if prefix else k, value[k])
        elif isinstance(value, list):
            lines.append("%s = %s" % (prefix, ", ".join(str(v) for v in value)))
        else:
            lines.append("%s = %s" % (prefix, value))

    emit("", doc)
    return "\n".join(lines) + "\n"


def _error_doc(exc):
    code = exc.code if isinstance(exc, TwistcohError) else "VALIDATION_ERROR"
    return json.dumps({"error": {"code": code, "message": str(exc)}},
                      sort_keys=True, indent=2) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(prog="twistcoh")
    sub = ap.add_subparsers(dest="mode", required=True)

    def common(p, with_window=True):
        p.add_argument("--output", choices=("json", "text"), default="json")
        if with_window:
            p.add_argument("--max-weight", type=int, default=None)
            p.add_argument("--span", type=int, default=None)

    p = sub.add_parser("cohomology")
    p.add_argument("file")
    common(p)
    p = sub.add_parser("gm")
    p.add_argument("file", nargs="?")
    p.add_argument("--lambda", dest="lam", default=None)
    common(p)
    p = sub.add_parser("gauge-check")
    p.add_argument("file")
    common(p)
    p = sub.add_parser("residue")
    p.add_argument("file")
    common(p, with_window=False)
    p = sub.add_parser("hyper")
    p.add_argument("file")
    common(p, with_window=False)

    if argv is None:
        argv = sys.argv[1:]
    # Join "--lambda -1/2" so argparse does not read the value as a flag.
    argv = list(argv)
    for i in range(len(argv) - 1):
        if argv[i] == "--lambda" and argv[i + 1].startswith("-"):
            argv[i:i + 2] = ["--lambda=" + argv[i + 1]]
            break
    args = ap.parse_args(argv)
    try:
        if args.mode == "gm" and args.file is None:
            if args.lam is None:
                raise ValidationError("gm needs a file or --lambda")
            document = "[gm]\nlambda = %s\n" % args.lam
        else:
            with open(args.file, "r", encoding="utf-8") as fh:
                document = fh.read()
        job = parse_job(document, mode=args.mode)
        if getattr(args, "max_weight", None) is not None:
            job.max_weight = args.max_weight
        if getattr(args, "span", None) is not None:
            job.span = args.span
        job.output = args.output
        if not (job.max_weight >= 1 and job.span >= 2):
            raise ValidationError("need max_weight >= 1 and span >= 2")
    except _COMPUTE_FAILURES as exc:
        sys.stdout.write(_error_doc(exc))
        return 3
    except (TwistcohError, ValueError, OSError) as exc:
        sys.stdout.write(_error_doc(exc))
        return 2
    try:
        doc = run_job(job)
    except _COMPUTE_FAILURES as exc:
        sys.stdout.write(_error_doc(exc))
        return 3
    except TwistcohError as exc:
        sys.stdout.write(_error_doc(exc))
        return 2
    sys.stdout.write(_format_output(doc, job.output))
    return 0


if __name__ == "__main__":
    sys.exit(main())
