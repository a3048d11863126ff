"""
Serviços do Diretor, um por etapa do pipeline
"""
