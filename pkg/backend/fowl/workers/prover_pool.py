"""Bounded pool of concurrent prover subprocesses."""

from typing import List, Optional, Sequence
import asyncio
import logging

from fowl.config import settings
from fowl.logic.ast import TptpProblem
from fowl.schemas import ProverConfig, ProverVerdict, SzsStatus
from fowl.services.prover import run_prover_async

logger = logging.getLogger(__name__)


class ProverPool:
    """Runs independent problems with at most `parallelism` provers alive at once.

    Results come back in submission order, whatever order the provers finish in.
    """

    def __init__(self, config: ProverConfig, parallelism: Optional[int] = None):
        self.config = config
        self.parallelism = parallelism or settings.FOWL_PARALLELISM
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")

    async def _run_one(
        self, semaphore: asyncio.Semaphore, index: int, problem: TptpProblem, satisfiability: bool
    ) -> ProverVerdict:
        async with semaphore:
            try:
                return await run_prover_async(problem, self.config, satisfiability)
            except Exception as e:
                logger.error(f"Proof attempt {index} failed: {e}")
                return ProverVerdict(status=SzsStatus.ERROR, raw_output=str(e))

    async def run_all_async(
        self, problems: Sequence[TptpProblem], satisfiability: bool = False
    ) -> List[ProverVerdict]:
        if not problems:
            return []
        semaphore = asyncio.Semaphore(self.parallelism)
        logger.info(f"Proving {len(problems)} problems with parallelism {self.parallelism}")
        tasks = [self._run_one(semaphore, i, p, satisfiability) for i, p in enumerate(problems)]
        return list(await asyncio.gather(*tasks))

    def run_all(self, problems: Sequence[TptpProblem], satisfiability: bool = False) -> List[ProverVerdict]:
        return asyncio.run(self.run_all_async(problems, satisfiability))
