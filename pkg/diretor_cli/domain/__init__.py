"""
Domínio do Diretor: modelos, interfaces e textos de prompt
"""
