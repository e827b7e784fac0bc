"""twistkit: exact tools for power-equality twist detection.

Core modules:

- ``exactnum``   roots of unity, cyclotomic numbers, Laurent polynomials
- ``localfield`` root-of-unity bounds in local fields and a power-conjugacy oracle
- ``weights``    torus-weight multisets, tensor/symmetric powers, recovery
- ``density``    density reports, thresholds, finite component-group models
- ``modular``    eigenvalue tables, Dirichlet characters, the twist pipeline
- ``service``    FastAPI app exposing every operation
- ``cli``        thin client over the service (in-process by default)
"""

__version__ = "0.1.0"
