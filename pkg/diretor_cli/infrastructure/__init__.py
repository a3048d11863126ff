"""
Infraestrutura: configuração, logging, mídia e adaptadores
"""
