from contextvars import ContextVar

run_state: ContextVar[str] = ContextVar("run_state", default="-")
