from .statevector import GateCounts, RegisterLayout, StateVector, init_basis, init_uniform

__all__ = ["GateCounts", "RegisterLayout", "StateVector", "init_basis", "init_uniform"]
