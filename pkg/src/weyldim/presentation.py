"""Text presentations of modules and text/JSON rendering of reports.

Input grammar, one statement per line or separated by ``;``::

    weyl n=<int>
    module rank=<int>
    labels <name> ...            (optional generator names)
    rel <sum>

A sum is a sequence of terms ``[+|-] [coef [*]] factor ...`` where coef is an
integer or ``p/q`` and factors are ``x<i>[^k]``, ``d<i>[^k]`` and exactly one
``e<i>``.  The index may be omitted on x and d when n = 1 and on e when the
rank is 1.  Factors are separated by whitespace or ``*`` and must be written
x before d (no products are evaluated).  ``#`` starts a comment.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import WeylMonomial
from .dimpoly import CharPolyReport, InvariantSet
from .errors import ParseError
from .numpoly import NumPoly1, NumPoly2
from .terms import ModuleElement, Term, rho


@dataclass(frozen=True)
class Presentation:
    n: int
    m: int
    relations: Tuple[ModuleElement, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        for f in self.relations:
            if f.is_zero():
                raise ValueError("zero relation")
            if (f.n, f.m) != (self.n, self.m):
                raise ValueError("relation over a different ambient module")
        if self.labels is not None and len(self.labels) != self.m:
            raise ValueError("one label per free generator is required")


# -- lexer -----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<sep>[;\n])|(?P<num>\d+)"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+\-*/^=])"
)
_FACTORS = re.compile(r"([xde])(\d*)")
_FACTOR_RUN = re.compile(r"(?:[xde]\d*)+")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(source: str) -> List[List[_Tok]]:
    """Statements as token lists (separators and comments dropped)."""
    statements: List[List[_Tok]] = [[]]
    line, start = 1, 0
    pos = 0
    while pos < len(source):
        mt = _TOKEN.match(source, pos)
        col = pos - start + 1
        if not mt:
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = mt.lastgroup
        text = mt.group()
        if kind == "sep":
            statements.append([])
            if text == "\n":
                line += 1
                start = mt.end()
        elif kind not in ("ws", "comment"):
            statements[-1].append(_Tok(kind, text, line, col))
        pos = mt.end()
    return [s for s in statements if s]


# -- parser ----------------------------------------------------------------

class _Parser:
    def __init__(self, source: str):
        self.statements = _lex(source)
        self.n: Optional[int] = None
        self.m: Optional[int] = None
        self.labels: Optional[Tuple[str, ...]] = None
        self.relations: List[ModuleElement] = []

    def run(self) -> Presentation:
        for st in self.statements:
            head = st[0]
            if head.kind != "word":
                raise ParseError(f"expected a statement keyword, got {head.text!r}", head.line, head.col)
            kw = head.text
            if kw == "weyl":
                self.n = self._setting(st, "n")
            elif kw == "module":
                self.m = self._setting(st, "rank")
            elif kw == "labels":
                self._labels(st)
            elif kw == "rel":
                self._need_header(head)
                self.relations.append(self._relation(st))
            else:
                raise ParseError(f"unknown statement {kw!r}", head.line, head.col)
        if self.n is None or self.m is None:
            raise ParseError("missing 'weyl n=' or 'module rank=' header", 1, 1)
        return Presentation(self.n, self.m, tuple(self.relations), self.labels)

    def _setting(self, st: List[_Tok], name: str) -> int:
        head = st[0]
        if self.relations:
            raise ParseError(f"'{head.text}' must come before any relation", head.line, head.col)
        if len(st) != 4 or st[1].text != name or st[2].text != "=" or st[3].kind != "num":
            raise ParseError(f"expected '{head.text} {name}=<int>'", head.line, head.col)
        value = int(st[3].text)
        if value < 1:
            raise ParseError(f"{name} must be at least 1", st[3].line, st[3].col)
        return value

    def _labels(self, st: List[_Tok]) -> None:
        names = []
        for t in st[1:]:
            if t.kind != "word":
                raise ParseError(f"bad label {t.text!r}", t.line, t.col)
            names.append(t.text)
        if self.m is not None and len(names) != self.m:
            raise ParseError(f"expected {self.m} labels, got {len(names)}", st[0].line, st[0].col)
        self.labels = tuple(names)

    def _need_header(self, tok: _Tok) -> None:
        if self.n is None or self.m is None:
            raise ParseError("relation before the 'weyl' and 'module' headers", tok.line, tok.col)
        if self.labels is not None and len(self.labels) != self.m:
            raise ParseError(f"expected {self.m} labels", tok.line, tok.col)

    def _relation(self, st: List[_Tok]) -> ModuleElement:
        toks = st[1:]
        if not toks:
            raise ParseError("empty relation", st[0].line, st[0].col)
        terms: Dict[Term, Fraction] = {}
        i = 0
        first = True
        while i < len(toks):
            sign = 1
            if toks[i].text in "+-" and toks[i].kind == "op":
                sign = -1 if toks[i].text == "-" else 1
                i += 1
            elif not first:
                raise ParseError(f"expected '+' or '-', got {toks[i].text!r}", toks[i].line, toks[i].col)
            first = False
            i, coeff, term = self._term(toks, i, st[0])
            terms[term] = terms.get(term, 0) + sign * coeff
        f = ModuleElement(self.n, self.m, terms)
        if f.is_zero():
            raise ParseError("zero relation", st[0].line, st[0].col)
        return f

    def _term(self, toks: List[_Tok], i: int, head: _Tok):
        n, m = self.n, self.m
        where = toks[i] if i < len(toks) else head
        coeff = Fraction(1)
        if i < len(toks) and toks[i].kind == "num":
            num = int(toks[i].text)
            i += 1
            if i + 1 < len(toks) and toks[i].text == "/" and toks[i + 1].kind == "num":
                den = int(toks[i + 1].text)
                if den == 0:
                    raise ParseError("zero denominator", toks[i + 1].line, toks[i + 1].col)
                coeff = Fraction(num, den)
                i += 2
            else:
                coeff = Fraction(num)
            if i < len(toks) and toks[i].text == "*":
                i += 1
        alpha = [0] * n
        beta = [0] * n
        gen = None
        seen_d = False
        while i < len(toks) and toks[i].text not in ("+", "-"):
            t = toks[i]
            if t.text == "*":
                i += 1
                continue
            if t.kind != "word" or not _FACTOR_RUN.fullmatch(t.text):
                raise ParseError(f"unexpected {t.text!r} in a term", t.line, t.col)
            pieces = _FACTORS.findall(t.text)
            i += 1
            power = 1
            if i + 1 < len(toks) and toks[i].text == "^":
                if toks[i + 1].kind != "num":
                    raise ParseError("expected an exponent after '^'", toks[i].line, toks[i].col)
                power = int(toks[i + 1].text)
                i += 2
            for k, (letter, idx) in enumerate(pieces):
                p = power if k == len(pieces) - 1 else 1
                bound = m if letter == "e" else n
                if idx:
                    j = int(idx)
                elif bound == 1:
                    j = 1
                else:
                    raise ParseError(f"index required on '{letter}'", t.line, t.col)
                if not 1 <= j <= bound:
                    raise ParseError(f"index out of range: {letter}{j} (max {bound})", t.line, t.col)
                if letter == "e":
                    if gen is not None:
                        raise ParseError("more than one generator factor in a term", t.line, t.col)
                    if p != 1:
                        raise ParseError("generator factor cannot carry an exponent", t.line, t.col)
                    gen = j
                elif letter == "x":
                    if seen_d:
                        raise ParseError("x factor after d factor: write terms in x-before-d normal form", t.line, t.col)
                    alpha[j - 1] += p
                else:
                    seen_d = True
                    beta[j - 1] += p
        if gen is None:
            raise ParseError("term has no generator factor e<i>", where.line, where.col)
        return i, coeff, Term(WeylMonomial(tuple(alpha), tuple(beta)), gen)


def parse(source: str) -> Presentation:
    return _Parser(source).run()


def load(path: str) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def render_presentation(p: Presentation) -> str:
    lines = [f"weyl n={p.n}", f"module rank={p.m}"]
    if p.labels:
        lines.append("labels " + " ".join(p.labels))
    lines.extend(f"rel {f}" for f in p.relations)
    return "\n".join(lines) + "\n"


# -- report rendering ------------------------------------------------------

def _q(c: Fraction):
    """Integers stay integers; other rationals become "p/q" strings."""
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _unq(v) -> Fraction:
    return Fraction(v) if isinstance(v, str) else Fraction(int(v))


def _poly2_payload(P: NumPoly2) -> dict:
    return {
        "binomial": [list(row) for row in P.coeffs],
        "monomial": [[_q(c) for c in row] for row in P.to_monomial()],
    }


def _poly1_payload(P: NumPoly1) -> dict:
    return {"binomial": list(P.coeffs), "monomial": [_q(c) for c in P.to_monomial()]}


def _invariants_payload(inv: InvariantSet) -> dict:
    return {
        "d": inv.d,
        "a_nn": inv.a_nn,
        "mu": list(inv.mu),
        "nu": list(inv.nu),
        "a_mu": inv.a_mu,
        "a_nu": inv.a_nu,
        "top_coeffs": [list(t) for t in inv.top_coeffs],
        "bernstein_class": inv.bernstein_class,
    }


def report_payload(report: CharPolyReport) -> dict:
    return {
        "n": report.n,
        "m": report.m,
        "phi": _poly2_payload(report.phi),
        "omega": _poly2_payload(report.omega),
        "omega_bar": _poly2_payload(report.omega_bar),
        "psi": None if report.psi is None else _poly1_payload(report.psi),
        "invariants": _invariants_payload(report.invariants),
        "basis": [{"element": str(g), "u": str(g.u), "v": str(g.v)} for g in report.basis.elements],
        "stability_point": None if report.stability_point is None else list(report.stability_point),
        "seed": report.extra.get("seed"),
    }


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def render_text(report: CharPolyReport) -> str:
    inv = report.invariants
    out = [f"module: n={report.n}, m={report.m}"]
    out.append(f"(x,d)-Groebner basis: {len(report.basis)} element(s)")
    for k, g in enumerate(report.basis.elements, 1):
        out.append(f"  g{k} = {g}")
        out.append(f"       u = {g.u}, v = {g.v}, rho = {rho(g)}")
    for name, P in (("phi", report.phi), ("omega", report.omega), ("omega_bar", report.omega_bar)):
        out.append(f"{name} = {P}")
        out.append(f"{name} (binomial) = {P.binomial_str()}")
    if report.psi is not None:
        out.append(f"psi = {report.psi}")
        out.append(f"psi (binomial) = {report.psi.binomial_str()}")
    if inv.is_zero:
        out.append("invariants: zero polynomial")
    else:
        out.append(
            f"invariants: d={inv.d} a_nn={inv.a_nn} mu={inv.mu} a_mu={inv.a_mu} "
            f"nu={inv.nu} a_nu={inv.a_nu} bernstein_class={_yes(inv.bernstein_class)}"
        )
        out.append("top_coeffs: " + " ".join(f"({i},{j}):{c}" for i, j, c in inv.top_coeffs))
    if report.stability_point is not None:
        out.append(f"stability_point = {tuple(report.stability_point)}")
    if "seed" in report.extra:
        out.append(f"seed = {report.extra['seed']}")
    return "\n".join(out) + "\n"


def dump_json(payload: dict) -> str:
    """One top-level key per line, values written compactly; key order is fixed."""
    lines = [f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in payload.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def render_report(report: CharPolyReport, format: str = "text") -> str:
    if format == "json":
        return dump_json(report_payload(report))
    if format == "text":
        return render_text(report)
    raise ValueError(f"unknown format {format!r}")


@dataclass
class LoadedReport:
    """Polynomial payloads recovered from a JSON report."""

    n: int
    m: int
    phi: NumPoly2
    omega: NumPoly2
    omega_bar: NumPoly2
    psi: Optional[NumPoly1]
    invariants: InvariantSet
    stability_point: Optional[Tuple[int, int]]


def _load_poly2(d: dict) -> NumPoly2:
    P = NumPoly2(d["binomial"])
    mono = [[_unq(c) for c in row] for row in d["monomial"]]
    if mono != [list(r) for r in P.to_monomial()]:
        raise ValueError("binomial and monomial payloads disagree")
    return P


def load_report_json(text: str) -> LoadedReport:
    d = json.loads(text)
    inv = d["invariants"]
    psi = None
    if d.get("psi") is not None:
        psi = NumPoly1(d["psi"]["binomial"])
        if [_unq(c) for c in d["psi"]["monomial"]] != psi.to_monomial():
            raise ValueError("binomial and monomial payloads disagree")
    phi = _load_poly2(d["phi"])
    invariants = InvariantSet(
        d=inv["d"],
        a_nn=inv["a_nn"],
        mu=tuple(inv["mu"]),
        nu=tuple(inv["nu"]),
        a_mu=inv["a_mu"],
        a_nu=inv["a_nu"],
        top_coeffs=tuple(tuple(t) for t in inv["top_coeffs"]),
        bernstein_class=inv["bernstein_class"],
        is_zero=phi.is_zero(),
    )
    sp = d.get("stability_point")
    return LoadedReport(
        d["n"], d["m"], phi, _load_poly2(d["omega"]), _load_poly2(d["omega_bar"]), psi, invariants,
        None if sp is None else tuple(sp),
    )
