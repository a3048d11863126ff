"""
Camada de aplicação: serviços que implementam as etapas do diretor
"""
