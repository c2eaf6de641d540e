import pytest

from cyclade.exprs import (
    EvaluationError,
    ParseError,
    format_measure_expr,
    format_xi,
    parse_measure_ast,
    parse_measure_expr,
    parse_xi_expr,
)
from cyclade.graphs import GraphFamily
from cyclade.measures import basic_measure, candidate_measure, measure_equal
from cyclade.transforms import XiExpression, XiFactor, theorem_2_5_lookup, xi_expand
from cyclade.verify import CORRECTED_IDENTITIES, MEASURE_IDENTITIES


# ---------------------------------------------------------------------------
# xi syntax
# ---------------------------------------------------------------------------

def test_parse_xi_examples():
    e = parse_xi_expr("xi(5+,9+:15+)")
    assert e == XiExpression((XiFactor(5, True), XiFactor(9, True)),
                             (XiFactor(15, True),), "")
    assert e == theorem_2_5_lookup(GraphFamily("E8", 8))
    assert parse_xi_expr("xi(3:)") == XiExpression((XiFactor(3, False),), (), "")
    assert parse_xi_expr("xi(:3)") == XiExpression((), (XiFactor(3, False),), "")
    assert parse_xi_expr("xi(:)") == XiExpression((), (), "")
    assert parse_xi_expr("xi''(5+:4)").normalizer == "doubleprime"


def test_parse_xi_series_equalities():
    assert xi_expand(parse_xi_expr("xi(2+:3)"), 32) == xi_expand(
        parse_xi_expr("xi(4:2,3)"), 32)


def test_parse_xi_errors():
    for text, pos_at_least in (("xi(5++:3)", 5), ("xi(", 3), ("xj(1:2)", 0),
                               ("xi(1:2", 6), ("xi'''(1:2)", 2), ("xi(1,:2)", 5),
                               ("xi(0:2)", 3), ("xi(1:2)x", 7)):
        with pytest.raises(ParseError) as err:
            parse_xi_expr(text)
        assert err.value.position >= 0


def test_xi_round_trip_corpus():
    corpus = [
        "xi(2:3)", "xi(1+:2+)", "xi'(3+:3)", "xi''(5+:4)",
        "xi(8:3,6+)", "xi(12:4,9+)", "xi(5+,9+:15+)",
        "xi(6+:3,4)", "xi(9+:4,6)", "xi(15+:6,10)",
        "xi(3:)", "xi(:3)", "xi(:)", "xi'(1,4:5)", "xi'(2,4+:6+)",
        # the series-table entries for the four density kinds
        "xi'(7+:7)", "xi(6:7)", "xi(1+,5:7)", "xi'(3,4:7)",
        "xi'(7:7+)", "xi(6+:7+)", "xi(1+,5+:7+)", "xi'(3,4+:7+)",
    ]
    for text in corpus:
        parsed = parse_xi_expr(text)
        assert format_xi(parsed) == text
        assert parse_xi_expr(format_xi(parsed)) == parsed


# ---------------------------------------------------------------------------
# measure syntax
# ---------------------------------------------------------------------------

def test_parse_measure_examples():
    e7 = parse_measure_expr("(2*beta''_3 + d'_1)/3")
    assert measure_equal(e7, candidate_measure(GraphFamily("E7", 7), "thm87"))
    assert measure_equal(parse_measure_expr("d_1"), basic_measure("d", 1))
    assert measure_equal(parse_measure_expr("2*d_2 - d_1"),
                         parse_measure_expr("gamma_2"))


def test_parse_measure_scalars():
    a = parse_measure_expr("3/2*d_2 - 1/2*d_1")
    b = parse_measure_expr("(3*d_2 - d_1)/2")
    assert measure_equal(a, b)


def test_parse_measure_errors():
    with pytest.raises(EvaluationError):
        parse_measure_expr("d''''_2")
    with pytest.raises(EvaluationError):
        parse_measure_expr("alpha'''_2")
    with pytest.raises(EvaluationError):
        parse_measure_expr("d_1 * d_2")
    with pytest.raises(EvaluationError):
        parse_measure_expr("3/2")
    with pytest.raises(EvaluationError):
        parse_measure_expr("d_1 + 2")
    with pytest.raises(ParseError):
        parse_measure_expr("delta_1")
    with pytest.raises(ParseError):
        parse_measure_expr("d_1 +")
    with pytest.raises(ParseError):
        parse_measure_expr("(d_1")
    with pytest.raises(ParseError):
        parse_measure_expr("")


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_measure_expr("d_1 + %")
    assert err.value.position == 6
    assert err.value.expected


def test_measure_normalize_round_trip():
    corpus = [lhs for _, lhs, _ in MEASURE_IDENTITIES]
    corpus += [rhs for _, _, rhs in MEASURE_IDENTITIES]
    corpus += [printed for _, _, printed, _ in CORRECTED_IDENTITIES]
    corpus += [fixed for _, _, _, fixed in CORRECTED_IDENTITIES]
    corpus += [
        "alpha_12 + (d_12 - d_6 - d_4 + d_3)/2",
        "beta'_9 + (d'_1 - d'_3)/2",
        "alpha'_15 + gamma'_15 - (d'_5 + d'_3)/2",
        "(d''_2 + 2*alpha''_2 + 3*d'''_1)/6",
        "(2*beta''_3 + d'_1)/3",
        "(2*alpha''_5 + 2*gamma''_5 - d''_1)/3",
        "(d_5 + d_3 + d_2 - d_1)/2",
    ]
    for text in corpus:
        normalized = format_measure_expr(parse_measure_ast(text))
        # normalization is idempotent and meaning-preserving
        assert format_measure_expr(parse_measure_ast(normalized)) == normalized
        assert measure_equal(parse_measure_expr(normalized), parse_measure_expr(text))


def test_measure_format_canonical_spacing():
    assert format_measure_expr(parse_measure_ast("2*d_2-d_1")) == "2*d_2 - d_1"
    assert format_measure_expr(parse_measure_ast("( d_3+d'_1 ) / 2")) == "(d_3 + d'_1)/2"
