"""
Entrada e saída de mídia (quadros, PCM, codec externo)
"""
