"""
gkgalois - verificação computacional de retas e pontos de Galois da curva GK

Módulos disponíveis:
- ff: corpos finitos e a torre F_q ⊂ F_q² ⊂ F_q⁶ ⊂ F_q^(6m)
- projgeom: pontos, planos e retas (Plücker) de P³
- polyseries: polinômios multivariados e séries truncadas
- gkcurve: a curva, seus pontos racionais e o modelo plano X'
- localmult: multiplicidades locais, grau e ramificação das projeções
- autgroup: matrizes de automorfismos e fechos de grupos
- galois: decisão, varredura e censo
- cli: linha de comando
"""

__version__ = "1.0.0"
__author__ = "Desenvolvedor"
__description__ = "Verificação de retas e pontos de Galois da curva GK para q=2 e q=3"
