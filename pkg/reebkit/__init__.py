"""Pacote de linha de comando do reebkit."""
