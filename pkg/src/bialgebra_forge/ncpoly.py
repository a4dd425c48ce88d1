"""Truncated noncommutative polynomials over the generator alphabet.

Words are tuples of generator indices; the empty word is the unit.
Coefficients are ParamPoly values carried at the working order
(reporting order + slack). Generator degree is capped: a product whose
coefficient survives truncation but whose word exceeds the cap is a
hard error, so runaway rewriting cannot pass silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceededError, InputError, NonTerminatingSeriesError
from .params import ParamPoly
from .scalars import ONE, Scalar
from .tensors import Basis


@dataclass(frozen=True)
class Context:
    """Shared computation settings: basis, parameters, truncation."""

    basis: Basis
    params: tuple
    order: int = 5
    cap: int = 10
    slack: int = 2

    @property
    def working_order(self) -> int:
        return self.order + self.slack

    def zero_poly(self) -> ParamPoly:
        return ParamPoly.zero(self.params, self.working_order)

    def const_poly(self, value) -> ParamPoly:
        return ParamPoly.const(self.params, self.working_order, value)

    def param_poly(self, name) -> ParamPoly:
        return ParamPoly.parameter(self.params, self.working_order, name)

    def with_params(self, params) -> "Context":
        return Context(self.basis, tuple(params), self.order, self.cap, self.slack)


def word_str(word, basis: Basis) -> str:
    if not word:
        return "1"
    parts = []
    run, count = word[0], 0
    for g in word:
        if g == run:
            count += 1
        else:
            parts.append((run, count))
            run, count = g, 1
    parts.append((run, count))
    return "*".join(
        basis.names[g] if c == 1 else f"{basis.names[g]}^{c}" for g, c in parts
    )


class NCPoly:
    __slots__ = ("context", "terms")

    def __init__(self, context: Context, terms=None):
        self.context = context
        clean = {}
        if terms:
            for word, coeff in terms.items():
                if coeff:
                    clean[word] = coeff
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, context):
        return cls(context)

    @classmethod
    def unit(cls, context):
        return cls(context, {(): context.const_poly(ONE)})

    @classmethod
    def generator(cls, context, index):
        if not 0 <= index < len(context.basis):
            raise InputError(f"generator index {index} out of range")
        return cls(context, {(index,): context.const_poly(ONE)})

    @classmethod
    def from_scalar(cls, context, value):
        return cls(context, {(): context.const_poly(value)})

    @classmethod
    def from_coeff(cls, context, coeff: ParamPoly):
        return cls(context, {(): coeff})

    def _like(self, terms):
        return NCPoly(self.context, terms)

    # -- linear structure ------------------------------------------------------

    def __add__(self, other: "NCPoly"):
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            s = out.get(word)
            s = coeff if s is None else s + coeff
            if s:
                out[word] = s
            else:
                out.pop(word, None)
        return self._like(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def scale(self, factor):
        """Multiply by a commuting coefficient (ParamPoly or Scalar)."""
        if isinstance(factor, Scalar):
            return self._like({w: c.scale(factor) for w, c in self.terms.items()})
        return self._like({w: c * factor for w, c in self.terms.items()})

    # -- free multiplication ----------------------------------------------------

    def __mul__(self, other: "NCPoly"):
        cap = self.context.cap
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * c2
                if not c:
                    continue
                w = w1 + w2
                if len(w) > cap:
                    raise CapExceededError(
                        f"word {word_str(w, self.context.basis)} exceeds "
                        f"generator-degree cap {cap}"
                    )
                s = out.get(w)
                s = c if s is None else s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return self._like(out)

    def __pow__(self, n: int):
        out = NCPoly.unit(self.context)
        for _ in range(n):
            out = out * self
        return out

    # -- structure ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def min_param_degree(self):
        degrees = [c.min_degree() for c in self.terms.values()]
        degrees = [d for d in degrees if d is not None]
        return min(degrees) if degrees else None

    def truncate(self, order: int) -> "NCPoly":
        return self._like({w: c.truncate(order) for w, c in self.terms.items()})

    def coefficient(self, word) -> ParamPoly:
        return self.terms.get(tuple(word), self.context.zero_poly())

    def v_part(self) -> dict:
        """Generator-degree-1 component, as {generator index: ParamPoly}."""
        return {w[0]: c for w, c in self.terms.items() if len(w) == 1}

    def substitute(self, images, target: Context = None) -> "NCPoly":
        ctx = self.context if target is None else target
        tgt = (ctx.params, ctx.working_order)
        out = {}
        for w, c in self.terms.items():
            nc = c.substitute(images, tgt)
            if nc:
                out[w] = nc
        return NCPoly(ctx, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for word, coeff in self.sorted_terms():
            parts.append(_joined(coeff, word_str(word, self.context.basis), not word))
        joined = parts[0]
        for p in parts[1:]:
            joined += p if p.startswith("-") else "+" + p
        return joined

    def __repr__(self):
        return f"NCPoly({self})"


def _joined(coeff: ParamPoly, body: str, body_is_unit: bool) -> str:
    c = str(coeff)
    if body_is_unit:
        return c
    if c == "1":
        return body
    if c == "-1":
        return "-" + body
    if "+" in c[1:] or "-" in c[1:]:
        c = f"({c})"
    return f"{c}*{body}"


class TensorNCPoly:
    """Tensor square / cube of the word algebra; coefficients are global
    ParamPoly values, multiplication acts factorwise."""

    __slots__ = ("context", "arity", "terms")

    def __init__(self, context: Context, arity: int, terms=None):
        self.context = context
        self.arity = arity
        clean = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    clean[key] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, context, arity):
        return cls(context, arity)

    @classmethod
    def unit(cls, context, arity):
        return cls(context, arity, {((),) * arity: context.const_poly(ONE)})

    def _like(self, terms):
        return TensorNCPoly(self.context, self.arity, terms)

    def __add__(self, other):
        if self.arity != other.arity:
            raise InputError("tensor arity mismatch")
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            s = out.get(key)
            s = coeff if s is None else s + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return self._like(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def scale(self, factor):
        if isinstance(factor, Scalar):
            return self._like({k: c.scale(factor) for k, c in self.terms.items()})
        return self._like({k: c * factor for k, c in self.terms.items()})

    def __mul__(self, other: "TensorNCPoly"):
        if self.arity != other.arity:
            raise InputError("tensor arity mismatch")
        cap = self.context.cap
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                if not c:
                    continue
                key = tuple(a + b for a, b in zip(k1, k2))
                if any(len(w) > cap for w in key):
                    raise CapExceededError(
                        "tensor factor exceeds generator-degree cap"
                    )
                s = out.get(key)
                s = c if s is None else s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return self._like(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorNCPoly):
            return NotImplemented
        return (
            self.context == other.context
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def flip(self) -> "TensorNCPoly":
        """Swap the two factors (arity 2 only)."""
        if self.arity != 2:
            raise InputError("flip needs arity 2")
        return self._like({(k[1], k[0]): c for k, c in self.terms.items()})

    def truncate(self, order: int) -> "TensorNCPoly":
        return self._like({k: c.truncate(order) for k, c in self.terms.items()})

    def substitute(self, images, target: Context = None) -> "TensorNCPoly":
        ctx = self.context if target is None else target
        tgt = (ctx.params, ctx.working_order)
        out = {}
        for k, c in self.terms.items():
            nc = c.substitute(images, tgt)
            if nc:
                out[k] = nc
        return TensorNCPoly(ctx, self.arity, out)

    def vv_part(self) -> dict:
        """Component with every factor of generator degree 1, keyed by
        generator index tuples."""
        return {
            tuple(w[0] for w in key): c
            for key, c in self.terms.items()
            if all(len(w) == 1 for w in key)
        }

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (tuple(len(w) for w in kv[0]), kv[0]),
        )

    def __str__(self):
        if not self.terms:
            return "0"
        basis = self.context.basis
        parts = []
        for key, coeff in self.sorted_terms():
            body = " (x) ".join(word_str(w, basis) for w in key)
            parts.append(_joined(coeff, body, False))
        joined = parts[0]
        for p in parts[1:]:
            joined += p if p.startswith("-") else "+" + p
        return joined

    def __repr__(self):
        return f"TensorNCPoly({self})"


def tensor(*factors: NCPoly) -> TensorNCPoly:
    """Outer tensor product of 2 or 3 NCPoly factors."""
    context = factors[0].context
    arity = len(factors)
    expanded = {}
    for key_coeffs in _expand(factors):
        key, coeff = key_coeffs
        s = expanded.get(key)
        s = coeff if s is None else s + coeff
        if s:
            expanded[key] = s
        else:
            expanded.pop(key, None)
    return TensorNCPoly(context, arity, expanded)


def _expand(factors):
    head, *rest = factors
    if not rest:
        for w, c in head.terms.items():
            yield (w,), c
    else:
        for w, c in head.terms.items():
            for key, coeff in _expand(rest):
                yield (w,) + key, c * coeff


# -- elementary series -------------------------------------------------------


def _series_coeffs(fn: str, max_k: int):
    fact = Fraction(1)
    for k in range(max_k + 1):
        if k:
            fact *= k
        if fn == "exp":
            yield k, Scalar(Fraction(1) / fact)
        elif fn == "sinh" and k % 2 == 1:
            yield k, Scalar(Fraction(1) / fact)
        elif fn == "cosh" and k % 2 == 0:
            yield k, Scalar(Fraction(1) / fact)


def series_apply(fn: str, arg: NCPoly) -> NCPoly:
    """Taylor series of exp/sinh/cosh at a parameter-weighted argument.

    Every term of arg must carry parameter degree >= 1 so that the
    series terminates at the working order.
    """
    if fn not in ("exp", "sinh", "cosh"):
        raise InputError(f"unknown series function {fn!r}")
    if arg.terms and arg.min_param_degree() == 0:
        raise NonTerminatingSeriesError(
            f"{fn} argument has a parameter-degree-0 term; series would not terminate"
        )
    max_k = arg.context.working_order
    out = NCPoly.zero(arg.context)
    power = NCPoly.unit(arg.context)
    next_k = 0
    for k, coeff in _series_coeffs(fn, max_k):
        while next_k < k:
            power = power * arg
            next_k += 1
        out = out + power.scale(coeff)
    return out


def divide_param(a, monomial: dict):
    """Exact division of every coefficient by prod(param^power)."""
    if isinstance(a, (NCPoly, TensorNCPoly)):
        params = a.context.params
        exps = tuple(monomial.get(p, 0) for p in params)
        missing = set(monomial) - set(params)
        if missing:
            raise InputError(f"unknown parameters {sorted(missing)} in divisor")
        out = {k: c.divide_monomial(exps) for k, c in a.terms.items()}
        if isinstance(a, NCPoly):
            return NCPoly(a.context, out)
        return TensorNCPoly(a.context, a.arity, out)
    raise InputError("divide_param expects an NCPoly or TensorNCPoly")
