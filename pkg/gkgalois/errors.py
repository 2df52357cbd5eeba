"""
Exceções do pacote gkgalois.

Todas derivam de GKGaloisError para que a CLI possa distinguir falhas do
domínio de erros inesperados.
"""


class GKGaloisError(Exception):
    """Erro base do pacote."""

    pass


class NotPrimeError(GKGaloisError, ValueError):
    """Característica informada não é um número primo."""

    pass


class FieldMismatchError(GKGaloisError):
    """Operação entre elementos de corpos distintos sem mergulho explícito."""

    pass


class FieldTooLargeError(GKGaloisError):
    """Corpo excede o limite de tabelas de logaritmo."""

    pass


class UnsupportedParameterError(GKGaloisError, ValueError):
    """Parâmetro q fora do intervalo suportado."""

    pass


class DegenerateConfigurationError(GKGaloisError):
    """Configuração projetiva degenerada (pontos iguais, planos iguais...)."""

    pass


class EnumerationGuardError(GKGaloisError):
    """Enumeração recusada: o corpo é grande demais."""

    pass


class SingularPointError(GKGaloisError):
    """Ponto singular onde se esperava um ponto liso da curva."""

    pass


class CurveConsistencyError(GKGaloisError):
    """Contagem ou identidade violada; indica bug de implementação."""

    pass


class ClosureCapExceeded(GKGaloisError):
    """Fechamento de grupo ultrapassou o limite de elementos."""

    pass


class ParameterConditionError(GKGaloisError, ValueError):
    """Parâmetro de automorfismo não satisfaz a condição exigida."""

    pass


class PluckerRelationError(GKGaloisError):
    """Coordenadas de Plücker que não satisfazem a relação quadrática."""

    pass
