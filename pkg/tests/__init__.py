"""
Pacote de testes do gkgalois.
"""
