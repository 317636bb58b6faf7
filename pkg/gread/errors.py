"""
Exceções do GREAD - hierarquia usada pela biblioteca e mapeada para códigos de saída pela CLI
"""


class GreadError(Exception):
    """Erro base de todo o pacote"""


class ConfigError(GreadError, ValueError):
    """Configuração inválida (chave desconhecida, valor fora do domínio, modo inexistente)"""


class DataError(GreadError, ValueError):
    """Arquivos de dados inválidos ou inconsistentes"""


class GraphStructureError(DataError):
    """Grafo cru com estrutura inválida (assimétrico, pesos negativos, tipo errado)"""


class ShapeError(GreadError, ValueError):
    """Dimensões incompatíveis entre operadores e matrizes"""


class DivergenceError(GreadError, ArithmeticError):
    """Estado não finito detectado durante a integração"""

    def __init__(self, step, context=""):
        self.step = step
        self.context = context
        message = f"Divergência no passo {step}"
        if context:
            message = f"{message} ({context})"
        super().__init__(message)

    def with_context(self, context):
        """Retorna uma cópia com contexto adicional"""
        merged = f"{context}: {self.context}" if self.context else context
        return DivergenceError(self.step, merged)
