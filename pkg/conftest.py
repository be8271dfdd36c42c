"""Fixtures compartilhadas pelos testes."""
import random
from pathlib import Path
from typing import Dict, List

import pytest

from config import get_settings
from formula_parser import parse_formula
from modal_core import And, Atom, Box, Dia, ModalFormula, NAtom, Or

FIXTURES = Path(__file__).parent / "fixtures"

AXIOM_K = "<>(p & ~q) | (<>~p | []q)"


def _formulas_by_size(max_connectives: int, atoms=("p",)) -> Dict[int, List[ModalFormula]]:
    exact: Dict[int, List[ModalFormula]] = {0: [Atom(a) for a in atoms]}
    for k in range(1, max_connectives + 1):
        found: List[ModalFormula] = [NAtom(a) for a in atoms] if k == 1 else []
        for body in exact[k - 1]:
            found += [Box(body), Dia(body)]
        for i in range(k):
            for left in exact[i]:
                for right in exact[k - 1 - i]:
                    found += [And(left, right), Or(left, right)]
        exact[k] = found
    return exact


def enumerate_formulas(max_connectives: int) -> List[ModalFormula]:
    """Todas as fórmulas NNF sobre p com até max_connectives conectivos."""
    exact = _formulas_by_size(max_connectives)
    return [a for k in sorted(exact) for a in exact[k]]


def random_nnf(rng: random.Random, size: int, atoms=("p", "q")) -> ModalFormula:
    """Fórmula NNF aleatória com no máximo size nós."""
    if size <= 1:
        name = rng.choice(atoms)
        return Atom(name) if rng.random() < 0.5 else NAtom(name)
    kind = rng.choice(("and", "or", "box", "dia") if size > 2 else ("box", "dia"))
    if kind in ("box", "dia"):
        body = random_nnf(rng, size - 1, atoms)
        return Box(body) if kind == "box" else Dia(body)
    split = rng.randint(1, size - 2)
    left = random_nnf(rng, split, atoms)
    right = random_nnf(rng, size - 1 - split, atoms)
    return And(left, right) if kind == "and" else Or(left, right)


@pytest.fixture
def fixture_text():
    def read(name: str) -> str:
        return (FIXTURES / name).read_text(encoding="utf-8")
    return read


@pytest.fixture
def fixture_path():
    def path(name: str) -> str:
        return str(FIXTURES / name)
    return path


@pytest.fixture
def axiom_k() -> ModalFormula:
    return parse_formula(AXIOM_K)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


@pytest.fixture(autouse=True)
def _fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
