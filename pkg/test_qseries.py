import pytest

from energy_transfer.services.generating_functions import base_function_F, euler_product, has_zero_energy_cycle
from energy_transfer.services.qseries import (Monomial, PochhammerFactor, SeriesSpace, Specialization,
                                              TruncatedSeries, expand_product, overpartition_product,
                                              pochhammer, specialize, specialize_product)
from energy_transfer.utils.energy_utils import chain_energy, constant_energy, parse_preset
from energy_transfer.utils.exceptions import (ConvergenceError, IncompatibleSeriesError, InputError,
                                              NegativeExponentError)


def test_two_color_expansion():
    space = SeriesSpace(("a", "b"), 2)
    product = expand_product([PochhammerFactor(Monomial.of(-1, 1, a=1), count=1),
                              PochhammerFactor(Monomial.of(-1, 1, b=1), count=1)], space)
    assert product.terms == {(0, 0, 0, 0): 1, (1, 0, 1, 0): 1, (1, 0, 0, 1): 1, (2, 0, 1, 1): 1}
    assert product.coefficient(2, a=1, b=1) == 1


def test_distinct_and_odd_series():
    space = SeriesSpace((), 5)
    distinct = pochhammer(Monomial.of(-1, 1), 1, None, space)
    odd = pochhammer(Monomial.of(1, 1), 2, None, space, reciprocal=True)
    assert distinct.q_coefficients() == [1, 1, 1, 2, 2, 3]
    assert odd.q_coefficients() == [1, 1, 1, 2, 2, 3]


def test_pochhammer_against_sympy():
    sympy = pytest.importorskip("sympy")
    q = sympy.symbols("q")
    order = 12
    space = SeriesSpace((), order)
    finite = pochhammer(Monomial.of(1, 2), 3, 4, space)
    expected = sympy.expand(sympy.prod([1 - q ** (2 + 3 * k) for k in range(4)]))
    assert finite.q_coefficients() == [int(expected.coeff(q, n)) for n in range(order + 1)]
    reciprocal = pochhammer(Monomial.of(1, 1), 1, None, space, reciprocal=True)
    partitions = [int(sympy.npartitions(n)) for n in range(order + 1)]
    assert reciprocal.q_coefficients() == partitions


def test_series_arithmetic():
    space = SeriesSpace(("a",), 3)
    x = space.monomial(2, 1, 0, {"a": 1})
    y = space.monomial(1, 2)
    assert (x * y).coefficient(3, a=1) == 2
    assert (x * x).coefficient(2, a=2) == 4
    assert (y * y).terms == {}
    assert (x - x).terms == {}
    assert (3 * y).coefficient(2) == 3
    with pytest.raises(IncompatibleSeriesError):
        x + SeriesSpace(("b",), 3).one()


def test_truncation_and_validation():
    space = SeriesSpace((), 2)
    assert space.from_q_coefficients([1, 1, 1, 1]).q_coefficients() == [1, 1, 1]
    with pytest.raises(InputError):
        SeriesSpace(("q",), 2)
    with pytest.raises(InputError):
        space.key(1, 0, {"a": 1})
    with pytest.raises(InputError):
        SeriesSpace((), -1)
    with pytest.raises(NegativeExponentError):
        TruncatedSeries(space, {(-1, 0): 1})
    with pytest.raises(ConvergenceError):
        pochhammer(Monomial.of(1, 0), 0, None, space)
    with pytest.raises(ConvergenceError):
        pochhammer(Monomial.of(1, 0, a=1), 1, None, SeriesSpace(("a",), 2), reciprocal=True)


def test_specialize():
    space = SeriesSpace(("a", "b"), 2)
    s = TruncatedSeries(space, {(1, 0, 1, 0): 3, (1, 0, 0, 1): 5, (2, 0, 1, 1): 7})
    out = specialize(s, Specialization(2, {"a": 1}, {"b": 0}))
    assert out.space.symbols == ()
    assert out.terms == {(3, 0): 3}
    kept = specialize(s, Specialization(1, {}, {"b": 2}, ("a",)))
    assert kept.terms == {(1, 0, 1): 3, (1, 0, 0): 10, (2, 0, 1): 14}
    with pytest.raises(InputError):
        specialize(s, Specialization(1, {"a": 1}))
    with pytest.raises(NegativeExponentError):
        specialize(s, Specialization(1, {"a": -2, "b": 0}), q_order=4)


def test_specialized_overpartition_product():
    distinct_odd = specialize_product(
        [PochhammerFactor(Monomial.of(-1, 1, a=1, c=1)), PochhammerFactor(Monomial.of(-1, 1, b=1, c=1)),
         PochhammerFactor(Monomial.of(1, 1, a=1, d=1), reciprocal=True),
         PochhammerFactor(Monomial.of(1, 1, b=1, d=1), reciprocal=True)],
        ("a", "b", "c", "d"), Specialization(4, {"a": -1, "b": -3}, {"c": 1, "d": 0}), 10)
    assert distinct_odd.q_coefficients() == pochhammer(Monomial.of(-1, 1), 2, None,
                                                       SeriesSpace((), 10)).q_coefficients()


def test_overpartition_product_low_order():
    product = overpartition_product(1)
    # q^1: a or b, overlined (c) or not (d)
    assert product.coefficient(1, a=1, c=1) == 1
    assert product.coefficient(1, a=1, d=1) == 1
    assert product.coefficient(1, b=1, d=1) == 1
    assert sum(product.q_coefficients()) == 5


def test_twister_base_function(twister):
    f = base_function_F(twister, 3)
    assert f.coefficient(0, 1, a=1) == 1
    assert f.coefficient(0, 2, a=1, b=1) == 2
    assert f.coefficient(0, 2, a=2) == 0
    assert f.coefficient(0, 3, a=2, b=1) == 1


def test_base_function_of_chain():
    # eps(a, b) = 1 only: chains are b^i a^j
    f = base_function_F(chain_energy(["a", "b"]), 2)
    assert f.coefficient(0, 2, a=1, b=1) == 1
    assert f.coefficient(0, 2, a=2) == 1
    assert f.coefficient(0, 2, b=2) == 1


def test_euler_product_of_one_state():
    e = constant_energy(["a"], 1)
    product = euler_product(e, 1, 6)
    # distinct positive parts
    assert product.q_coefficients() == [1, 1, 1, 2, 2, 3, 4]
    assert euler_product(e, 0, 6).q_coefficients() == [2, 2, 2, 4, 4, 6, 8]


def test_rho_zero_diverges_on_zero_energy_cycle(overline_energy):
    assert has_zero_energy_cycle(overline_energy)
    assert not has_zero_energy_cycle(constant_energy(["a", "b"], 1))
    with pytest.raises(ConvergenceError):
        euler_product(overline_energy, 0, 4)


def _closed_form(preset, syms, x, order):
    """Closed form of the base function, with every 1/(1-t) cut to a geometric sum"""
    def geometric(t):
        return sum(t ** k for k in range(order + 1))

    if preset == "zero":
        return geometric(sum(syms) * x)
    if preset == "one":
        return 1 + sum(syms) * x
    if preset == "distinct":
        return 1 + sum(s * x * geometric(s * x) for s in syms)
    if preset == "chain":
        result = 1
        for s in syms:
            result *= geometric(s * x)
        return result
    if preset == "strict-chain":
        result = 1
        for s in syms:
            result *= 1 + s * x
        return result
    if preset == "overpartition":
        bbar, abar, a, b = syms
        return (1 + abar * x) * (1 + bbar * x) * geometric(a * x) * geometric(b * x)
    a, b = syms
    return (1 + a * x) * (1 + b * x) * geometric(a * b * x ** 2)


@pytest.mark.parametrize("preset", ["zero:a,b,c", "one:a,b,c", "distinct:a,b,c", "chain:a,b,c",
                                    "strict-chain:a,b,c", "overpartition", "twister"])
def test_base_function_matches_closed_form(preset):
    sympy = pytest.importorskip("sympy")
    order = 6
    e = parse_preset(preset)
    x = sympy.Symbol("x")
    syms = sympy.symbols(list(e.states.labels))
    expanded = sympy.Poly(sympy.expand(_closed_form(preset.partition(":")[0], syms, x, order)), x, *syms)
    expected = {monom: int(c) for monom, c in expanded.terms() if monom[0] <= order}
    f = base_function_F(e, order)
    assert {key[1:]: v for key, v in f.terms.items()} == expected
