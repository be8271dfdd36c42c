"""Configurações da aplicação."""
from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Configurações da aplicação."""

    # Kernel
    kernel_limit: int = 100_000  # Máximo de regras aplicadas por verificação

    # Oráculo semântico
    oracle_limit: int = 1_000_000  # Máximo de nós visitados na busca de contramodelo

    # Busca de provas (orçamento padrão do subcomando search)
    search_max_decides: int = 16
    search_max_nodes: int = 100_000

    # Logging
    debug: bool = False
    log_json: bool = True

    @field_validator("kernel_limit", "oracle_limit", "search_max_decides", "search_max_nodes")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("deve ser >= 1")
        return value

    class Config:
        env_file = ".env"
        env_prefix = "MODALCERT_"
        case_sensitive = False
        extra = "ignore"


@lru_cache
def get_settings() -> Settings:
    """Retorna a instância de configurações, carregada uma única vez."""
    return Settings()
