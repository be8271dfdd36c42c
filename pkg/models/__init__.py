"""Modelos Pydantic dos arquivos de evidência."""
