import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

_SHIPPED_DERIVATIONS = Path(__file__).resolve().parent / "rewriting" / "derivations"


class AppConfig:
    # --- General Application Settings ---
    LOG_LEVEL_CONSOLE = os.getenv("LOG_LEVEL_CONSOLE", "INFO").upper()
    PROD_EXECUTION = os.getenv("PROD_EXECUTION", "False").lower() == "true"
    SENTRY_DSN = os.getenv('SENTRY_DSN')
    LOGFIRE_TOKEN = os.getenv("LOGFIRE_TOKEN")
    LOGFIRE_ENVIRONMENT = os.getenv("LOGFIRE_ENVIRONMENT", "local")

    # --- Evaluation ---
    MAX_QUBITS = int(os.getenv("QCEQ_MAX_QUBITS", "12"))
    TOL = float(os.getenv("QCEQ_TOL", "1e-9"))

    # --- Angle Solvers ---
    SOLVER_TOL = float(os.getenv("QCEQ_SOLVER_TOL", "1e-10"))
    ANGLE_SNAP = float(os.getenv("QCEQ_ANGLE_SNAP", "1e-10"))
    CLAUSE_TOL = float(os.getenv("QCEQ_CLAUSE_TOL", "1e-12"))
    POLISH_MAX_ITER = int(os.getenv("QCEQ_POLISH_MAX_ITER", "50"))
    POLISH_TARGET = float(os.getenv("QCEQ_POLISH_TARGET", "1e-11"))

    # --- Rule Checks ---
    TRIALS = int(os.getenv("QCEQ_TRIALS", "20"))
    SEED = int(os.getenv("QCEQ_SEED", "7"))

    # --- Rewriting ---
    MATCH_WINDOW = int(os.getenv("QCEQ_MATCH_WINDOW", "8"))
    ANCHOR_SLACK = int(os.getenv("QCEQ_ANCHOR_SLACK", "2"))
    DERIVATIONS_DIR = os.getenv("QCEQ_DERIVATIONS_DIR", str(_SHIPPED_DERIVATIONS))

    # --- Synthesis ---
    SYNTH_MAX_QUBITS = int(os.getenv("QCEQ_SYNTH_MAX_QUBITS", "6"))
