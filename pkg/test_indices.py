"""Testes da álgebra de índices."""
import pytest

from conftest import AXIOM_K
from exceptions import AdapterError, ModalInputError
from formula_parser import parse_formula
from indices import (
    Chld, DiaInd, IndexMap, Left, NsIndex, RELIDX, ROOT, Right, Shape, ZB,
    child_indices, dia_child, format_index, format_seq, map_extend, map_lookup,
    parse_index, parse_seq, resolve, try_resolve, world_of,
)
from modal_core import And, Atom, Box, Dia, NAtom

RR = Right(Right(ROOT))


@pytest.fixture
def goal():
    return parse_formula(AXIOM_K)


class TestConstruction:

    def test_children_of_binary(self):
        assert child_indices(ROOT, Shape.AND) == [Left(ROOT), Right(ROOT)]
        assert child_indices(ROOT, Shape.OR) == [Left(ROOT), Right(ROOT)]

    def test_child_of_box(self):
        assert child_indices(Right(ROOT), Shape.BOX) == [Left(Right(ROOT))]

    def test_dia_child(self):
        assert dia_child(Left(ROOT), RR) == DiaInd(Left(ROOT), RR)

    def test_dia_child_is_injective(self):
        assert dia_child(Left(ROOT), RR) != dia_child(Left(Right(ROOT)), RR)


class TestText:

    @pytest.mark.parametrize("text", [
        "root",
        "relidx",
        "left(right(root))",
        "diaind(left(root),right(right(root)))",
        "right(diaind(left(root),right(right(root))))",
    ])
    def test_round_trip(self, text):
        assert format_index(parse_index(text)) == text

    def test_spaces_are_accepted(self):
        assert parse_index(" diaind( left(root) , root )") == DiaInd(Left(ROOT), ROOT)

    @pytest.mark.parametrize("text", ["", "left(", "left(root", "up(root)", "root root", "diaind(root)"])
    def test_malformed(self, text):
        with pytest.raises(ModalInputError):
            parse_index(text)

    def test_seq_round_trip(self):
        seq = Chld(2, Chld(1, ZB))
        assert parse_seq(format_seq(seq)) == seq
        assert parse_seq("chld(1, zb)") == Chld(1, ZB)

    @pytest.mark.parametrize("text", ["chld(0,zb)", "chld(x,zb)", "zb zb", "chld(1,zb"])
    def test_seq_malformed(self, text):
        with pytest.raises(ModalInputError):
            parse_seq(text)


class TestResolve:

    def test_walk(self, goal):
        assert resolve(goal, ROOT) == goal
        assert resolve(goal, RR) == Box(Atom("q"))
        assert resolve(goal, Left(RR)) == Atom("q")

    def test_diaind_yields_dia_body(self, goal):
        body = resolve(goal, DiaInd(Left(ROOT), RR))
        assert body == And(Atom("p"), NAtom("q"))

    def test_diaind_needs_box(self, goal):
        with pytest.raises(AdapterError):
            resolve(goal, DiaInd(Left(ROOT), Left(Right(ROOT))))

    def test_diaind_needs_dia(self, goal):
        with pytest.raises(AdapterError):
            resolve(goal, DiaInd(RR, RR))

    def test_dangling(self, goal):
        with pytest.raises(AdapterError):
            resolve(goal, Left(Left(RR)))
        assert try_resolve(goal, Right(RR)) is None

    def test_relidx_never_resolves(self, goal):
        assert try_resolve(goal, RELIDX) is None


class TestWorldOf:

    def test_worlds(self, goal):
        is_box = lambda j: isinstance(try_resolve(goal, j), Box)
        assert world_of(ROOT, is_box) == ROOT
        assert world_of(Left(ROOT), is_box) == ROOT
        assert world_of(Left(RR), is_box) == RR
        assert world_of(DiaInd(Left(ROOT), RR), is_box) == RR
        assert world_of(Right(DiaInd(Left(ROOT), RR)), is_box) == RR

    def test_dia_body_in_basic_indexing_lives_at_root(self, goal):
        is_box = lambda j: isinstance(try_resolve(goal, j), Box)
        assert resolve(goal, Left(ROOT)) == Dia(And(Atom("p"), NAtom("q")))
        assert world_of(Left(Left(ROOT)), is_box) == ROOT


class TestIndexMap:

    def test_seed(self):
        assert map_lookup(IndexMap.seed(), NsIndex(ROOT, ZB)) == ROOT

    def test_extend_and_lookup(self):
        n = NsIndex(Left(ROOT), Chld(1, ZB))
        m = map_extend(IndexMap.seed(), n, Left(ROOT))
        assert map_lookup(m, n) == Left(ROOT)
        assert len(m) == 2
        assert n not in IndexMap.seed()

    def test_unmapped(self):
        with pytest.raises(AdapterError):
            map_lookup(IndexMap.seed(), NsIndex(Left(ROOT), ZB))

    def test_bijective(self):
        with pytest.raises(AdapterError):
            map_extend(IndexMap.seed(), NsIndex(Left(ROOT), ZB), ROOT)
        with pytest.raises(AdapterError):
            map_extend(IndexMap.seed(), NsIndex(ROOT, ZB), Left(ROOT))

    def test_chld_position_positive(self):
        with pytest.raises(ModalInputError):
            Chld(0, ZB)
