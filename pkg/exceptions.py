"""Hierarquia de exceções do certificador."""


class ModalCertError(Exception):
    """Erro base da aplicação."""


class ModalInputError(ModalCertError):
    """Entrada inválida: fórmula, mundo, índice ou configuração."""


class EvidenceSchemaError(ModalInputError):
    """Arquivo de evidência malformado ou com campos ilegais para o formato."""


class EvidenceRejected(ModalCertError):
    """A evidência não certifica a fórmula."""


class AdapterError(EvidenceRejected):
    """Evidência inconsistente com a fórmula (índice pendente, correspondência quebrada, etc.)."""


class ResourceLimitError(ModalCertError):
    """Limite de recursos excedido."""


class KernelLimitError(ResourceLimitError):
    """Número máximo de regras aplicadas pelo kernel excedido."""


class OracleLimitError(ResourceLimitError):
    """Número máximo de nós visitados pelo oráculo excedido."""
