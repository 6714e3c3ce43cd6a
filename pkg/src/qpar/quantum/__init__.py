"""
Quantum - p-并行量子查询的态矢量模拟与量子上界算法
"""

from .statevector import Register, RegisterLayout, StateVector
from .oracle import ParallelOracle, apply_oracle
from .program import (
    ControlledHadamard,
    Diffusion,
    Hadamard,
    OracleSpec,
    PauliX,
    PauliZ,
    Permutation,
    PhaseFunction,
    ProgramResult,
    QuantumRoundProgram,
    run_program,
)
from .grover import closed_form_success, grover_parallel, grover_search
from .solvers import (
    DJQuantumSolver,
    ForrelationQuantumSolver,
    ParallelReadSolver,
    deutsch_jozsa_program,
    forrelation_accept_probability,
    forrelation_program,
)
from .parity import ana_quantum_program, parity_parallel_program
from .hybrid import cheatsheet_quantum_3round, two_adaptive_quantum
from .reductions import chain_parity, parity_reduction_instance

__all__ = [
    "Register",
    "RegisterLayout",
    "StateVector",
    "ParallelOracle",
    "apply_oracle",
    "ControlledHadamard",
    "Diffusion",
    "Hadamard",
    "OracleSpec",
    "PauliX",
    "PauliZ",
    "Permutation",
    "PhaseFunction",
    "ProgramResult",
    "QuantumRoundProgram",
    "run_program",
    "closed_form_success",
    "grover_parallel",
    "grover_search",
    "DJQuantumSolver",
    "ForrelationQuantumSolver",
    "ParallelReadSolver",
    "deutsch_jozsa_program",
    "forrelation_accept_probability",
    "forrelation_program",
    "ana_quantum_program",
    "parity_parallel_program",
    "cheatsheet_quantum_3round",
    "two_adaptive_quantum",
    "chain_parity",
    "parity_reduction_instance",
]
