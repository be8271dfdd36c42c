"""Testes do leitor e da impressão de fórmulas."""
import pytest

from conftest import AXIOM_K, random_nnf
from exceptions import ModalInputError
from formula_parser import format_formula, parse_formula
from modal_core import And, Atom, Box, Dia, NAtom, Or


def test_axiom_k():
    expected = Or(
        Dia(And(Atom("p"), NAtom("q"))),
        Or(Dia(NAtom("p")), Box(Atom("q"))),
    )
    assert parse_formula(AXIOM_K) == expected


def test_and_binds_tighter():
    assert parse_formula("p | q & r") == Or(Atom("p"), And(Atom("q"), Atom("r")))


def test_right_associative():
    assert parse_formula("p | q | r") == Or(Atom("p"), Or(Atom("q"), Atom("r")))
    assert parse_formula("p & q & r") == And(Atom("p"), And(Atom("q"), Atom("r")))


def test_modalities_are_prefix():
    assert parse_formula("[]<>~p") == Box(Dia(NAtom("p")))
    assert parse_formula("[]p & q") == And(Box(Atom("p")), Atom("q"))


def test_identifiers():
    assert parse_formula("rain_2") == Atom("rain_2")


@pytest.mark.parametrize("text", [
    "",
    "p |",
    "~(p & q)",
    "p q",
    "(p",
    "P",
    "p -> q",
])
def test_rejects(text):
    with pytest.raises(ModalInputError):
        parse_formula(text)


def test_error_reports_column():
    with pytest.raises(ModalInputError, match="coluna 3"):
        parse_formula("p q")


def test_print_minimal_parentheses():
    assert format_formula(parse_formula(AXIOM_K)) == "<>(p & ~q) | <>~p | []q"
    assert format_formula(parse_formula("(p | q) & r")) == "(p | q) & r"
    assert format_formula(parse_formula("(p & q) & r")) == "(p & q) & r"


def test_round_trip_random(rng):
    for _ in range(500):
        a = random_nnf(rng, rng.randint(1, 20))
        assert parse_formula(format_formula(a)) == a
