"""Testes da busca de provas limitada e da concordância com o oráculo."""
from dataclasses import replace

import pytest

from conftest import AXIOM_K, enumerate_formulas
from evidence_processor import parse_evidence, to_lmf_node
from exceptions import EvidenceRejected, ModalInputError
from formula_parser import parse_formula
from indices import DiaInd, Left, ROOT, Right, resolve
from kernel import check, parse_trace
from layers import LmfCert, LmfNode, lmf_hooks
from modal_core import And, Atom, Box, Countermodel, Dia, NAtom, Or, Valid, decide_validity
from oracle_search import NotFound, SearchBudget, certificate_from_trace, search_lmf
from polarized import Const, tr

DEFAULT_BUDGET = SearchBudget(16, 100_000)


class TestBudget:

    def test_parse(self):
        assert SearchBudget.parse("16,100000") == DEFAULT_BUDGET

    @pytest.mark.parametrize("text", ["16", "a,b", "16,", "-1,3"])
    def test_parse_rejects(self, text):
        with pytest.raises(ModalInputError):
            SearchBudget.parse(text)

    def test_positive(self):
        with pytest.raises(ModalInputError):
            SearchBudget(0, 10)


class TestSearch:

    def test_excluded_middle(self):
        result = search_lmf(parse_formula("p | ~p"), DEFAULT_BUDGET)
        assert result == LmfCert(LmfNode(ROOT, children=(LmfNode(Left(ROOT), Right(ROOT)),)))

    def test_axiom_k_finds_reference_proof(self, fixture_text):
        result = search_lmf(parse_formula(AXIOM_K), DEFAULT_BUDGET)
        expected = LmfCert(to_lmf_node(parse_evidence(fixture_text("axiomK.lmf.json")).proof))
        assert result == expected

    def test_result_replays(self):
        goal = parse_formula("[]p | <>~p")
        result = search_lmf(goal, DEFAULT_BUDGET)
        assert isinstance(result, LmfCert)
        trace = check(lmf_hooks(), result, tr(goal, Const(0)))
        assert certificate_from_trace(trace) == result

    def test_invalid_formula(self):
        assert isinstance(search_lmf(parse_formula("<>p"), DEFAULT_BUDGET), NotFound)

    def test_budget_exhausted(self):
        result = search_lmf(parse_formula(AXIOM_K), SearchBudget(16, 3))
        assert isinstance(result, NotFound)

    def test_depth_too_small(self):
        result = search_lmf(parse_formula(AXIOM_K), SearchBudget(3, 100_000))
        assert isinstance(result, NotFound)

    def test_kernel_limit_means_not_found(self):
        result = search_lmf(parse_formula(AXIOM_K), DEFAULT_BUDGET, kernel_limit=10)
        assert isinstance(result, NotFound)


def test_certificate_from_trace():
    trace = parse_trace(
        "store root\ndecide root\nandPos\ntruePos\nrelease\norNeg\n"
        "store left(root)\nstore right(root)\ndecide left(root)\ninit right(root)\n"
    )
    assert certificate_from_trace(trace) == LmfCert(
        LmfNode(ROOT, children=(LmfNode(Left(ROOT), Right(ROOT)),))
    )


def _agreement(max_connectives: int):
    for a in enumerate_formulas(max_connectives):
        valid = decide_validity(a) == Valid()
        result = search_lmf(a, DEFAULT_BUDGET)
        assert isinstance(result, LmfCert) == valid, a
        if valid:
            check(lmf_hooks(), result, tr(a, Const(0)))


def test_search_agrees_with_oracle():
    _agreement(4)


# Certificados válidos mutados contra fórmulas vizinhas inválidas

SOURCES = [AXIOM_K, "[]p | <>~p", "<>~p | [](p | q)", "(p & q) | (~p | ~q)"]


def _indices(goal):
    found = []

    def walk(a, i):
        found.append(i)
        if isinstance(a, (And, Or)):
            walk(a.left, Left(i))
            walk(a.right, Right(i))
        elif isinstance(a, (Box, Dia)):
            walk(a.body, Left(i))

    walk(goal, ROOT)
    dias = [i for i in found if isinstance(resolve(goal, i), Dia)]
    boxes = [i for i in found if isinstance(resolve(goal, i), Box)]
    for d in dias:
        for b in boxes:
            walk(resolve(goal, d).body, DiaInd(d, b))
    return found


def _variants(a):
    """Fórmulas com um literal de sinal trocado ou uma modalidade dualizada."""
    if isinstance(a, Atom):
        return [NAtom(a.name)]
    if isinstance(a, NAtom):
        return [Atom(a.name)]
    if isinstance(a, (Box, Dia)):
        dual = Dia if isinstance(a, Box) else Box
        return [dual(a.body)] + [type(a)(body) for body in _variants(a.body)]
    return (
        [type(a)(left, a.right) for left in _variants(a.left)]
        + [type(a)(a.left, right) for right in _variants(a.right)]
    )


def _small_countermodel(a) -> bool:
    result = decide_validity(a)
    return isinstance(result, Countermodel) and len(result.model.worlds) <= 3


def _paths(node, prefix=()):
    yield prefix, node
    for k, child in enumerate(node.children):
        yield from _paths(child, prefix + (k,))


def _edit(node, path, **changes):
    if not path:
        return replace(node, **changes)
    children = list(node.children)
    children[path[0]] = _edit(children[path[0]], path[1:], **changes)
    return replace(node, children=tuple(children))


def _mutants(tree, pool):
    """Árvores que diferem da original em um único extra, índice ou filho."""
    for path, node in _paths(tree):
        for j in pool + [None]:
            if j != node.extra:
                yield _edit(tree, path, extra=j)
        for j in pool:
            if j != node.index:
                yield _edit(tree, path, index=j)
        for k in range(len(node.children)):
            yield _edit(tree, path, children=node.children[:k] + node.children[k + 1:])


@pytest.mark.parametrize("source", SOURCES)
def test_mutated_certificates_are_rejected(source):
    formula = parse_formula(source)
    cert = search_lmf(formula, DEFAULT_BUDGET)
    assert isinstance(cert, LmfCert)
    goals = [a for a in _variants(formula) if _small_countermodel(a)]
    assert goals
    pool = _indices(formula)
    trees = [cert.tree] + list(_mutants(cert.tree, pool))
    for goal in goals:
        target = tr(goal, Const(0))
        for tree in trees:
            with pytest.raises(EvidenceRejected):
                check(lmf_hooks(), LmfCert(tree), target)
