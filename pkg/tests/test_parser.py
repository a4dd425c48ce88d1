from fractions import Fraction

import pytest

from bialgebra_forge.errors import (
    ExprSyntaxError, InexactDivisionError, UnknownIdentifierError,
)
from bialgebra_forge.exprparse import parse_expr
from bialgebra_forge.ncpoly import NCPoly, TensorNCPoly
from bialgebra_forge.scalars import I, Scalar

from conftest import context5, corrected_document

CTX = context5()
IDX = CTX.basis.index


def coeff(text):
    from bialgebra_forge.exprparse import parse_coefficient
    return parse_coefficient(text, CTX)


def test_simple_bracket_rhs():
    p = parse_expr("i*z1*p_y", CTX)
    assert isinstance(p, NCPoly)
    assert list(p.terms) == [(IDX["p_y"],)]
    assert p.coefficient((IDX["p_y"],)) == CTX.param_poly("z1").scale(I)


def test_prefactor_division_expands_before_dividing():
    p = parse_expr("(t/(z2*h))*sinh(z2*h*l_z)", CTX)
    lz = IDX["l_z"]
    t = CTX.param_poly("t")
    z2h = CTX.param_poly("z2") * CTX.param_poly("h")
    sixth = Scalar(Fraction(1, 6))
    expected = NCPoly(CTX, {
        (lz,): t,
        (lz,) * 3: (t * z2h * z2h).scale(sixth),
        (lz,) * 5: (t * z2h ** 4).scale(Scalar(Fraction(1, 120))),
    })
    # the k=5 numerator term has degree 11 > working order, so the
    # quotient stops at the l_z^5 term representable within slack
    assert p == NCPoly(CTX, {
        w: c for w, c in expected.terms.items() if len(w) <= 5
    })


def test_tensor_expression_for_coproduct():
    p = parse_expr("exp(-(z2/2)*p_x) (x) p_y + p_y (x) exp((z2/2)*p_x)", CTX)
    assert isinstance(p, TensorNCPoly)
    px, py = IDX["p_x"], IDX["p_y"]
    half = Scalar(Fraction(1, 2))
    for k in range(CTX.working_order + 1):
        left = p.terms.get(((px,) * k, (py,)))
        want = (CTX.param_poly("z2").scale(-half) ** k).scale(
            Scalar(Fraction(1, _fact(k)))
        )
        assert left == (want if want else None)


def _fact(k):
    out = 1
    for n in range(2, k + 1):
        out *= n
    return out


def test_power_and_unary_minus():
    p = parse_expr("-h^2*t^2*p_x^2", CTX)
    px = IDX["p_x"]
    want = -(CTX.param_poly("h") ** 2 * CTX.param_poly("t") ** 2)
    assert p == NCPoly(CTX, {(px, px): want})


def test_whitespace_insensitive():
    a = parse_expr("i * z1 * p_y", CTX)
    b = parse_expr("i*z1*p_y", CTX)
    assert a == b


def test_scalar_division_binds_to_coefficient():
    assert coeff("t/2") == CTX.param_poly("t").scale(Scalar(Fraction(1, 2)))
    assert coeff("3*i/4") == CTX.const_poly(Scalar(0, Fraction(3, 4)))


@pytest.mark.parametrize("text", [
    "i*z1*",          # dangling operator
    "(t",             # unbalanced paren
    "sinh t",         # function without parens
    "p_x p_y",        # juxtaposition is not multiplication
    "t ^ x",          # non-natural exponent
])
def test_syntax_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse_expr(text, CTX)


def test_syntax_error_carries_position():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("i*z1*)p_y", CTX)
    assert "position" in str(err.value)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError):
        parse_expr("i*zz*p_y", CTX)


def test_inexact_division_reported():
    with pytest.raises(InexactDivisionError):
        parse_expr("(z1*p_y)/z2", CTX)


def test_nested_tensor_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expr("(p_x (x) p_y) (x) p_z", CTX)


def test_mixed_arity_sum_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expr("p_x (x) p_y + p_z", CTX)


def test_round_trip_on_dataset_expressions():
    doc = corrected_document()
    texts = [item["rhs"] for item in doc.presentation["brackets"]]
    texts += list(doc.presentation["coproducts"].values())
    for text in texts:
        value = parse_expr(text, CTX)
        again = parse_expr(str(value), CTX)
        assert again == value, text


def test_printer_produces_grammar_conformant_scalars():
    p = parse_expr("(1/2 + 3*i/4)*p_x + (-1/2)*p_y - i*p_z", CTX)
    assert parse_expr(str(p), CTX) == p
