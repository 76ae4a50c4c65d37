"""
Simulador de rede quântica com fonte Sagnac de pares emaranhados em polarização.

Pacotes:
    spectral     grade ITU, espectro SPDC, ruído Raman e plano DWDM
    quantum      estados de dois qubits, cálculo de Jones e métricas
    detection    fluxos de time-tags SNSPD e coincidências
    tomography   tomografia de 16 projeções (inversão linear e MLE)
    franson      emaranhamento energia-tempo e visibilidade de franjas
    qkd          orçamento de enlace, peneiramento e taxa de chave
"""

__version__ = "0.4.0"
