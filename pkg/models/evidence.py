"""Modelos do arquivo de evidência JSON."""
from enum import Enum
from typing import List, Optional, Union

from pydantic import BaseModel, Field, model_validator

SCHEMA_VERSION = 1


class EvidenceFormat(str, Enum):
    """Formatos de evidência aceitos."""
    LS = "ls"
    PT = "pt"
    OS = "os"
    NS = "ns"
    LMF = "lmf"
    LMFM = "lmfm"
    LMFSTAR = "lmfstar"


class Indexing(str, Enum):
    """Indexação dos corpos de ◇ em evidências OS."""
    BASIC = "basic"
    FULL = "full"


class NsIndexModel(BaseModel):
    """Índice aninhado: posição na fórmula e sequente."""
    pos: str
    seq: str

    class Config:
        extra = "forbid"


class ProofNode(BaseModel):
    """Nó de prova; os campos permitidos dependem do formato do arquivo."""
    index: Union[str, NsIndexModel]
    extra: Optional[Union[str, NsIndexModel]] = None
    extras: Optional[List[str]] = None
    group: Optional[int] = None
    present: Optional[List[str]] = None
    future: Optional[str] = None
    children: List["ProofNode"] = Field(default_factory=list)

    class Config:
        extra = "forbid"


# Campos opcionais legais (além de index e children) por formato
_ALLOWED = {
    EvidenceFormat.LS: {"extra"},
    EvidenceFormat.LMF: {"extra"},
    EvidenceFormat.PT: {"extra"},
    EvidenceFormat.NS: {"extra"},
    EvidenceFormat.OS: {"extras"},
    EvidenceFormat.LMFM: {"extra", "group"},
    EvidenceFormat.LMFSTAR: {"extra", "group", "present", "future"},
}

_REQUIRED = {
    EvidenceFormat.LMFM: {"group"},
    EvidenceFormat.LMFSTAR: {"group", "present"},
}

_OPTIONAL_FIELDS = ("extra", "extras", "group", "present", "future")


class EvidenceFile(BaseModel):
    """
    Arquivo de evidência.

    Exemplo:
        {"schema": 1, "format": "lmf", "formula": "p | ~p",
         "proof": {"index": "root", "children": [...]}}
    """
    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    format: EvidenceFormat
    formula: str
    indexing: Optional[Indexing] = None
    proof: ProofNode

    class Config:
        extra = "forbid"
        populate_by_name = True

    @model_validator(mode="after")
    def _fields_match_format(self) -> "EvidenceFile":
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(f"schema {self.schema_version} não suportado (esperado {SCHEMA_VERSION})")
        if self.indexing is not None and self.format is not EvidenceFormat.OS:
            raise ValueError("indexing só é permitido no formato os")
        allowed = _ALLOWED[self.format]
        required = _REQUIRED.get(self.format, set())
        ns = self.format is EvidenceFormat.NS
        for path, node in _nodes(self.proof, "proof"):
            if isinstance(node.index, NsIndexModel) != ns:
                raise ValueError(f"{path}.index: formato de índice ilegal para {self.format.value}")
            if node.extra is not None and isinstance(node.extra, NsIndexModel) != ns:
                raise ValueError(f"{path}.extra: formato de índice ilegal para {self.format.value}")
            for name in _OPTIONAL_FIELDS:
                present = getattr(node, name) is not None
                if present and name not in allowed:
                    raise ValueError(f"{path}.{name}: campo ilegal para o formato {self.format.value}")
                if not present and name in required:
                    raise ValueError(f"{path}.{name}: campo obrigatório no formato {self.format.value}")
        return self

    @classmethod
    def parse_evidence_dict(cls, data: dict) -> "EvidenceFile":
        """Valida um dicionário já decodificado do JSON."""
        return cls.model_validate(data)

    def to_json_dict(self) -> dict:
        """Dicionário canônico: ordem estável e sem campos vazios."""
        data = {"schema": self.schema_version, "format": self.format.value, "formula": self.formula}
        if self.indexing is not None:
            data["indexing"] = self.indexing.value
        data["proof"] = _node_dict(self.proof)
        return data


def _nodes(node: ProofNode, path: str):
    yield path, node
    for n, child in enumerate(node.children):
        yield from _nodes(child, f"{path}.children[{n}]")


def _index_value(value):
    if isinstance(value, NsIndexModel):
        return {"pos": value.pos, "seq": value.seq}
    return value


def _node_dict(node: ProofNode) -> dict:
    data = {"index": _index_value(node.index)}
    if node.extra is not None:
        data["extra"] = _index_value(node.extra)
    if node.extras is not None:
        data["extras"] = list(node.extras)
    if node.group is not None:
        data["group"] = node.group
    if node.present is not None:
        data["present"] = list(node.present)
    if node.future is not None:
        data["future"] = node.future
    data["children"] = [_node_dict(child) for child in node.children]
    return data
