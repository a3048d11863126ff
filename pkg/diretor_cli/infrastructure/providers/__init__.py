"""
Adaptadores de modelos externos (HTTP, subprocesso, OpenAI) e simulados
"""
