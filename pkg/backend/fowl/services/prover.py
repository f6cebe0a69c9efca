"""Run an external SZS-compliant FOF prover on a serialized problem."""

from typing import Optional, Tuple
import asyncio
import logging
import os
import re
import tempfile
import time

from fowl.core.errors import FowlError
from fowl.logic.ast import TptpProblem
from fowl.logic.tptp import emit_tptp
from fowl.schemas import EmitStyle, ProverConfig, ProverVerdict, SzsStatus

logger = logging.getLogger(__name__)

SZS_STATUS_PATTERN = re.compile(r"SZS status\s+([A-Za-z]+)")

# SZS ontology subtypes folded into the statuses we report
_SZS_ALIASES = {
    "ContradictoryAxioms": SzsStatus.THEOREM,
    "ResourceOut": SzsStatus.GAVE_UP,
    "MemoryOut": SzsStatus.GAVE_UP,
    "Unknown": SzsStatus.GAVE_UP,
    "Inappropriate": SzsStatus.GAVE_UP,
    "Incomplete": SzsStatus.GAVE_UP,
}

# grace period on top of the prover's own time limit
KILL_GRACE_SECONDS = 1.0


def parse_szs_status(output: str) -> Tuple[SzsStatus, Optional[str]]:
    """Status of the first SZS line in output, with the word as printed"""
    match = SZS_STATUS_PATTERN.search(output)
    if match is None:
        return SzsStatus.ERROR, None

    word = match.group(1)
    try:
        return SzsStatus(word), word
    except ValueError:
        pass

    status = _SZS_ALIASES.get(word)
    if status is None:
        logger.warning(f"Unrecognized SZS status '{word}'")
        return SzsStatus.ERROR, word
    if word == "ContradictoryAxioms":
        logger.warning("Prover reports contradictory axioms; the conjecture holds trivially")
    return status, word


def write_problem(problem: TptpProblem, config: ProverConfig) -> str:
    """Serialize problem to a fresh .p file and return its path"""
    text = emit_tptp(problem, EmitStyle.QUOTED)
    if config.problem_dir:
        os.makedirs(config.problem_dir, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        mode="w", suffix=".p", prefix="fowl_", dir=config.problem_dir, delete=False, encoding="utf-8"
    ) as tmp:
        tmp.write(text)
        return tmp.name


def _cleanup(path: str, config: ProverConfig) -> Optional[str]:
    if config.keep_problems:
        logger.warning(f"Kept problem file {path}")
        return path
    try:
        os.remove(path)
    except OSError as e:
        logger.warning(f"Could not remove problem file {path}: {e}")
    return None


async def run_prover_async(
    problem: TptpProblem,
    config: ProverConfig,
    satisfiability: bool = False,
) -> ProverVerdict:
    """Prove one problem; failures come back as an Error verdict, never as exceptions"""
    try:
        path = write_problem(problem, config)
    except (FowlError, OSError) as e:
        output = f"Could not write problem file: {e}"
        logger.error(output)
        return ProverVerdict(status=SzsStatus.ERROR, raw_output=output)

    command = config.command(path, satisfiability=satisfiability)
    logger.debug(f"Running {' '.join(command)}")

    started = time.monotonic()
    output = ""
    status = SzsStatus.ERROR
    try:
        process = await asyncio.create_subprocess_exec(
            *command,
            stdout=asyncio.subprocess.PIPE,
            stderr=asyncio.subprocess.STDOUT,
        )
        try:
            stdout, _ = await asyncio.wait_for(
                process.communicate(), timeout=config.timeout_seconds + KILL_GRACE_SECONDS
            )
        except asyncio.TimeoutError:
            process.kill()
            await process.wait()
            status = SzsStatus.TIMEOUT
            output = f"Killed after {config.timeout_seconds}s"
        else:
            output = stdout.decode("utf-8", errors="replace")
            status, word = parse_szs_status(output)
            if word is None:
                logger.error(f"No SZS status from {config.executable} (exit code {process.returncode})")
    except FileNotFoundError:
        output = f"Prover executable not found: {config.executable}"
        logger.error(output)
    except OSError as e:
        output = f"Could not start prover {config.executable}: {e}"
        logger.error(output)

    elapsed = time.monotonic() - started
    kept = _cleanup(path, config)
    logger.debug(f"Verdict {status.value} in {elapsed:.2f}s")
    return ProverVerdict(status=status, wall_clock=elapsed, raw_output=output, problem_path=kept)


def run_prover(problem: TptpProblem, config: ProverConfig, satisfiability: bool = False) -> ProverVerdict:
    """Blocking wrapper around run_prover_async"""
    return asyncio.run(run_prover_async(problem, config, satisfiability))
