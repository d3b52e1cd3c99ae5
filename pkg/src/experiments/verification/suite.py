import asyncio
import os
import time
from typing import Dict, Optional

import src.experiments.verification.checks  # noqa: F401  registers the checks
from src.config.settings import settings
from src.experiments.verification.check_registry import global_check_registry
from src.models.schema.check_schema import (
    CheckResult,
    Depth,
    VerificationCheck,
    VerificationReport,
)
from src.utils.logger import get_logger
from src.utils.result_writer import version_string

logger = get_logger(__name__)


def execute_check(check: VerificationCheck, depth: Depth) -> CheckResult:
    """Run one check, turning any exception into a failed result."""
    start = time.perf_counter()
    try:
        outcome = check.func(depth=depth)
        passed, worst, detail = outcome.passed, outcome.worst_residual, outcome.detail
    except Exception as exc:
        passed, worst, detail = False, float("nan"), f"{type(exc).__name__}: {exc}"
    result = CheckResult(
        name=check.name,
        description=check.description,
        passed=passed,
        worst_residual=worst,
        detail=detail,
        duration_s=time.perf_counter() - start,
    )
    logger.info(
        "%s %s (%.2fs) %s",
        "PASS" if passed else "FAIL",
        check.name,
        result.duration_s,
        detail,
    )
    return result


async def _run_all(depth: Depth, threads: int) -> VerificationReport:
    checks = global_check_registry.for_depth(depth)
    semaphore = asyncio.Semaphore(threads)
    results: Dict[str, CheckResult] = {}

    async def run_one(check: VerificationCheck) -> None:
        async with semaphore:
            results[check.name] = await asyncio.to_thread(execute_check, check, depth)

    await asyncio.gather(*[run_one(check) for check in checks])
    return VerificationReport(
        depth=depth,
        version=version_string(),
        results=[results[check.name] for check in checks],
    )


def run_verification_suite(
    depth: Depth = "quick", threads: Optional[int] = None
) -> VerificationReport:
    """Run every check registered for ``depth``; results keep registration order."""
    threads = settings.SIM_THREADS if threads is None else threads
    threads = threads if threads > 0 else (os.cpu_count() or 1)
    return asyncio.run(_run_all(depth, threads))
