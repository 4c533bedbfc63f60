"""Biblioteca de topologia computacional: malhas, campos PL e grafos de Reeb."""
