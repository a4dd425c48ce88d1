"""Truncated multivariate polynomials in commuting deformation parameters.

A ParamPoly is a sparse map from exponent vectors to Scalar coefficients,
over a fixed ordered tuple of parameter names, with every stored term of
total degree <= order. The order carried here is the *working* order
(reporting order plus slack); final reports truncate further down.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InexactDivisionError, InputError
from .scalars import ONE, Scalar, ZERO, format_scalar


def _degree(exps) -> int:
    return sum(exps)


class ParamPoly:
    __slots__ = ("params", "order", "terms")

    def __init__(self, params, order, terms=None):
        self.params = tuple(params)
        self.order = order
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff and _degree(exps) <= order:
                    clean[exps] = coeff
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, params, order):
        return cls(params, order)

    @classmethod
    def const(cls, params, order, value) -> "ParamPoly":
        if isinstance(value, (int, Fraction)):
            value = Scalar(value)
        z = (0,) * len(params)
        return cls(params, order, {z: value})

    @classmethod
    def parameter(cls, params, order, name) -> "ParamPoly":
        params = tuple(params)
        if name not in params:
            raise InputError(f"unknown parameter {name!r}")
        exps = tuple(1 if p == name else 0 for p in params)
        return cls(params, order, {exps: ONE})

    def _like(self, terms):
        return ParamPoly(self.params, self.order, terms)

    def _check(self, other):
        if self.params != other.params or self.order != other.order:
            raise InputError("ParamPoly context mismatch")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            s = out.get(exps, ZERO) + coeff
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return self._like(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        self._check(other)
        order = self.order
        out = {}
        for e1, c1 in self.terms.items():
            d1 = _degree(e1)
            for e2, c2 in other.terms.items():
                if d1 + _degree(e2) > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return self._like(out)

    def scale(self, coeff: Scalar):
        if not coeff:
            return self._like({})
        return self._like({e: c * coeff for e, c in self.terms.items()})

    def __pow__(self, n: int):
        out = ParamPoly.const(self.params, self.order, ONE)
        for _ in range(n):
            out = out * self
        return out

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return (
            self.params == other.params
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.params, self.order, frozenset(self.terms.items())))

    def min_degree(self):
        """Smallest total degree among stored terms; None when zero."""
        if not self.terms:
            return None
        return min(_degree(e) for e in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * len(self.params), ZERO)

    def truncate(self, order: int) -> "ParamPoly":
        """Drop terms of total degree > order; keeps the stored bound."""
        return ParamPoly(
            self.params, self.order,
            {e: c for e, c in self.terms.items() if _degree(e) <= order},
        )

    def with_order(self, order: int) -> "ParamPoly":
        return ParamPoly(self.params, order, self.terms)

    # -- monomial shifts -----------------------------------------------------

    def mul_monomial(self, exps, coeff: Scalar = ONE) -> "ParamPoly":
        """Multiply by coeff * prod(p_i^exps_i); exps may be negative
        (formal Laurent factor), in which case every term must stay
        in the polynomial ring."""
        if not coeff:
            return self._like({})
        out = {}
        for e, c in self.terms.items():
            shifted = tuple(a + b for a, b in zip(e, exps))
            if any(a < 0 for a in shifted):
                raise InexactDivisionError(
                    f"monomial shift {exps} leaves negative exponent on {e}"
                )
            if _degree(shifted) <= self.order:
                out[shifted] = c * coeff
        return self._like(out)

    def divide_monomial(self, exps, coeff: Scalar = ONE) -> "ParamPoly":
        neg = tuple(-a for a in exps)
        return self.mul_monomial(neg, ONE / coeff)

    def coefficient_of(self, index: int, power: int) -> "ParamPoly":
        """Coefficient of params[index]**power, as a poly with that
        exponent slot zeroed (the parameter stays in the context)."""
        out = {}
        for e, c in self.terms.items():
            if e[index] == power:
                out[e[:index] + (0,) + e[index + 1:]] = c
        return self._like(out)

    def substitute(self, images: dict, target: "PolyContextLike" = None) -> "ParamPoly":
        """Formal substitution of parameters.

        images maps a parameter name to a ParamPoly over the target
        context or to a ScaleMonomial (which may carry negative
        exponents; exactness is then checked per term). Unmapped
        parameters must exist in the target context.
        """
        if target is None:
            tparams, torder = self.params, self.order
        else:
            tparams, torder = tuple(target[0]), target[1]
        one = ParamPoly.const(tparams, torder, ONE)

        # images are resolved lazily: a parameter that never occurs with
        # a positive exponent need not exist in the target context
        poly_images = [None] * len(self.params)
        mono_images = [None] * len(self.params)

        def resolve(idx):
            name = self.params[idx]
            img = images.get(name)
            if img is None:
                poly_images[idx] = ParamPoly.parameter(tparams, torder, name)
            elif isinstance(img, ScaleMonomial):
                mono_images[idx] = img.embed_exps(self.params, tparams)
            elif isinstance(img, ParamPoly):
                if img.params != tparams:
                    img = ParamPoly(tparams, torder, {
                        _re_key(e, img.params, tparams): c
                        for e, c in img.terms.items()
                    })
                poly_images[idx] = img.with_order(torder)
            elif isinstance(img, Scalar):
                poly_images[idx] = ParamPoly.const(tparams, torder, img)
            else:
                raise InputError(f"bad substitution image for {name!r}")

        resolved = [False] * len(self.params)
        out = ParamPoly.zero(tparams, torder)
        for e, c in self.terms.items():
            term = one.scale(c)
            shift = [0] * len(tparams)
            for idx, power in enumerate(e):
                if not power:
                    continue
                if not resolved[idx]:
                    resolve(idx)
                    resolved[idx] = True
                if mono_images[idx] is not None:
                    mcoeff, mexps = mono_images[idx]
                    term = term.scale(mcoeff ** power)
                    for j, a in enumerate(mexps):
                        shift[j] += a * power
                else:
                    term = term * (poly_images[idx] ** power)
            if any(shift):
                term = term.mul_monomial(tuple(shift))
            out = out + term
        return out

    # -- display -------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (_degree(kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = [
                name if p == 1 else f"{name}^{p}"
                for name, p in zip(self.params, exps)
                if p
            ]
            c = format_scalar(coeff)
            if factors:
                if c == "1":
                    c = ""
                elif c == "-1":
                    c = "-"
            body = "*".join(factors)
            if c and body:
                text = f"{c}*{body}" if not c.endswith("-") else f"{c}{body}"
            else:
                text = c + body if c else body
            parts.append(text or "1")
        joined = parts[0]
        for p in parts[1:]:
            joined += p if p.startswith("-") else "+" + p
        return joined

    def __repr__(self):
        return f"ParamPoly({self})"


def _re_key(exps, src, dst):
    out = [0] * len(dst)
    for name, p in zip(src, exps):
        if p:
            out[dst.index(name)] += p
    return tuple(out)


class ScaleMonomial:
    """coeff * prod(param^exp) with possibly negative exponents.

    Used for basis rescalings and for substitutions of the form
    p -> h*t or h -> p/t, where exactness must be checked term by term.
    """

    __slots__ = ("coeff", "exps", "params")

    def __init__(self, params, coeff: Scalar, exps):
        self.params = tuple(params)
        self.coeff = coeff
        self.exps = tuple(exps)
        if not coeff:
            raise InputError("scale monomial must be invertible (nonzero)")

    @classmethod
    def constant(cls, params, coeff: Scalar):
        return cls(params, coeff, (0,) * len(params))

    @classmethod
    def parameter(cls, params, name, power=1):
        params = tuple(params)
        if name not in params:
            raise InputError(f"unknown parameter {name!r}")
        return cls(params, ONE, tuple(power if p == name else 0 for p in params))

    def inverse(self) -> "ScaleMonomial":
        return ScaleMonomial(self.params, ONE / self.coeff, tuple(-a for a in self.exps))

    def __mul__(self, other: "ScaleMonomial") -> "ScaleMonomial":
        return ScaleMonomial(
            self.params, self.coeff * other.coeff,
            tuple(a + b for a, b in zip(self.exps, other.exps)),
        )

    def embed_exps(self, src_params, dst_params):
        """(coeff, exponent vector over dst_params) for this monomial."""
        out = [0] * len(dst_params)
        for name, p in zip(self.params, self.exps):
            if p:
                if name not in dst_params:
                    raise InputError(f"parameter {name!r} missing from target")
                out[dst_params.index(name)] += p
        return self.coeff, tuple(out)

    def apply_to(self, poly: ParamPoly) -> ParamPoly:
        coeff, exps = self.embed_exps(self.params, poly.params)
        return poly.mul_monomial(exps, coeff)

    def __repr__(self):
        body = "*".join(
            name if p == 1 else f"{name}^{p}"
            for name, p in zip(self.params, self.exps) if p
        )
        c = format_scalar(self.coeff)
        return f"ScaleMonomial({c}{'*' + body if body else ''})"
