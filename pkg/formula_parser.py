"""Leitura e impressão de fórmulas modais em NNF."""
import re
from typing import List, Tuple

from exceptions import ModalInputError
from modal_core import And, Atom, Box, Dia, ModalFormula, NAtom, Or

_TOKEN = re.compile(r"\s*(\[\]|<>|[a-z][a-z0-9_]*|~|&|\||\(|\))")


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match:
            raise ModalInputError(f"Fórmula inválida: caractere inesperado na coluna {pos + 1}: {text!r}")
        tokens.append((match.group(1), match.start(1)))
        pos = match.end()
    return tokens


class _Parser:
    """
    Descida recursiva sobre a gramática:

        or   := and ('|' or)?
        and  := unit ('&' and)?
        unit := '~' atom | '[]' unit | '<>' unit | '(' or ')' | atom
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> str:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else ""

    def _fail(self, expected: str):
        if self.pos < len(self.tokens):
            tok, col = self.tokens[self.pos]
            raise ModalInputError(f"Fórmula inválida: esperado {expected}, encontrado {tok!r} na coluna {col + 1}")
        raise ModalInputError(f"Fórmula incompleta: esperado {expected} no fim de {self.text!r}")

    def _take(self) -> str:
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> ModalFormula:
        if not self.tokens:
            raise ModalInputError("Fórmula vazia")
        result = self._or()
        if self.pos != len(self.tokens):
            self._fail("fim da fórmula")
        return result

    def _or(self) -> ModalFormula:
        left = self._and()
        if self._peek() == "|":
            self._take()
            return Or(left, self._or())
        return left

    def _and(self) -> ModalFormula:
        left = self._unit()
        if self._peek() == "&":
            self._take()
            return And(left, self._and())
        return left

    def _unit(self) -> ModalFormula:
        tok = self._peek()
        if tok == "~":
            self._take()
            name = self._peek()
            if not _is_name(name):
                # Negação só sobre átomos
                self._fail("um átomo após '~'")
            self._take()
            return NAtom(name)
        if tok == "[]":
            self._take()
            return Box(self._unit())
        if tok == "<>":
            self._take()
            return Dia(self._unit())
        if tok == "(":
            self._take()
            inner = self._or()
            if self._peek() != ")":
                self._fail("')'")
            self._take()
            return inner
        if _is_name(tok):
            self._take()
            return Atom(tok)
        self._fail("um átomo, '~', '[]', '<>' ou '('")


def _is_name(tok: str) -> bool:
    return bool(tok) and tok[0].isalpha()


def parse_formula(text: str) -> ModalFormula:
    """
    Lê uma fórmula em NNF.

    Raises:
        ModalInputError: texto fora da gramática (com a coluna do erro)
    """
    return _Parser(text).parse()


def format_formula(a: ModalFormula) -> str:
    """Imprime a fórmula com o mínimo de parênteses; parse_formula(format_formula(a)) == a."""
    if isinstance(a, Atom):
        return a.name
    if isinstance(a, NAtom):
        return f"~{a.name}"
    if isinstance(a, Box):
        return f"[]{_unit(a.body)}"
    if isinstance(a, Dia):
        return f"<>{_unit(a.body)}"
    if isinstance(a, And):
        left = _unit(a.left)
        right = format_formula(a.right) if not isinstance(a.right, Or) else f"({format_formula(a.right)})"
        return f"{left} & {right}"
    left = format_formula(a.left) if not isinstance(a.left, Or) else f"({format_formula(a.left)})"
    return f"{left} | {format_formula(a.right)}"


def _unit(a: ModalFormula) -> str:
    if isinstance(a, (And, Or)):
        return f"({format_formula(a)})"
    return format_formula(a)
