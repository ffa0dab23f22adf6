"""Stable text and LaTeX-like renderings of expressions."""
from __future__ import annotations

import re

import sympy

from .expr import DEFJET, ETA, SUPER, THETA, Atom, Expr

_LATEX_PARAMS = {"lam": r"\lambda", "eps": r"\varepsilon", "kap": r"\kappa", "mu": r"\mu", "nu": r"\nu"}
_LATEX_FIELDS = {"u": "u", "xi": r"\xi", "f": "f"}


def _atom_latex(a: Atom) -> str:
    if a.kind == ETA:
        return r"\eta" if a.x == 1 else rf"\eta_{{{a.x}}}"
    if a.kind == THETA:
        return r"\theta"
    if a.kind == SUPER:
        base = r"\Phi" if a.x == 0 else rf"D^{{{a.x}}}\Phi"
        return base + (rf"_{{{'t' * a.t}}}" if a.t else "")
    if a.kind == DEFJET:
        return rf"\partial^{{{a.x}}}_{{x,{_exp_latex(a.eps)}}}{_LATEX_FIELDS.get(a.name, a.name)}"
    name = _LATEX_FIELDS.get(a.name, a.name)
    suffix = "x" * a.x + "t" * a.t
    return f"{name}_{{{suffix}}}" if suffix else name


def _exp_latex(g) -> str:
    text = str(g)
    for k, v in _LATEX_PARAMS.items():
        text = text.replace(k, v)
    return text.replace("*", "")


def _coef_text(c, latex: bool) -> tuple[str, int]:
    """Rendered coefficient and a sign flag (+1 / -1) pulled out front."""
    expr = c.to_sympy()
    sign = 1
    if expr.could_extract_minus_sign():
        expr, sign = -expr, -1
    if expr == 1:
        return "", sign
    if latex:
        names = {sympy.Symbol(k): v for k, v in _LATEX_PARAMS.items()}
        text = sympy.latex(expr, symbol_names=names)
        if isinstance(expr, sympy.Add):
            text = rf"\left({text}\right)"
        return text + " ", sign
    text = re.sub(r"\bI\b", "i", str(expr))
    if isinstance(expr, sympy.Add) or "/" in text:
        text = f"({text})"
    return text + "*", sign


def _monomial_text(key, latex: bool) -> str:
    evens, formals, odds = key
    parts = []
    for a, m in evens:
        s = _atom_latex(a) if latex else str(a)
        if m != 1:
            s = f"{s}^{{{m}}}" if latex else f"{s}^{m}"
        parts.append(s)
    for b, g in formals:
        inner = (_atom_latex(b) if latex else str(b)) if isinstance(b, Atom) else f"({_render(b, latex)})"
        if latex:
            parts.append(rf"(i{inner})^{{{_exp_latex(g)}}}")
        else:
            parts.append(f"(i*{inner})^({g})")
    for a in odds:
        parts.append(_atom_latex(a) if latex else str(a))
    return (" " if latex else "*").join(parts)


def _sort_key(key):
    return (len(key[2]), _monomial_text(key, False))


def _render(e: Expr, latex: bool) -> str:
    if e.is_zero:
        return "0"
    pieces = []
    for key in sorted(e.terms, key=_sort_key):
        ctext, sign = _coef_text(e.terms[key], latex)
        mono = _monomial_text(key, latex)
        if not mono:
            body = ctext.rstrip("* ") or "1"
        else:
            body = ctext + mono
        pieces.append(("- " if sign < 0 else "+ ") + body)
    text = " ".join(pieces)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def to_text(e: Expr) -> str:
    """Deterministic plain-text form (sorted monomials); used for golden comparisons."""
    return _render(e, latex=False)


def to_latex(e: Expr) -> str:
    return _render(e, latex=True)
