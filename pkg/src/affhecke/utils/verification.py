from concurrent.futures import ThreadPoolExecutor, as_completed
from threading import Lock
from typing import Callable, Dict, List, Optional, Sequence, TypeVar

from rich.console import Console
from rich.progress import Progress

from affhecke.config import get_runtime_config

T = TypeVar("T")
R = TypeVar("R")


def run_batch(
    items: Sequence[T],
    check: Callable[[T], R],
    max_workers: Optional[int] = None,
    console: Optional[Console] = None,
    label: str = "Verifying...",
    show_progress: bool = False,
) -> List[R]:
    """
    Run independent checks on a thread pool.

    Results come back in the order of ``items`` whatever the completion order.
    Exceptions raised by a check propagate to the caller.
    """
    max_workers = max_workers or get_runtime_config()["max_workers"]
    console = console or Console(stderr=True)
    results: Dict[int, R] = {}
    results_lock = Lock()  # Thread lock to protect shared dictionary

    def process(index: int, item: T) -> None:
        outcome = check(item)
        with results_lock:
            results[index] = outcome

    with Progress(console=console, disable=not show_progress) as progress:
        task = progress.add_task(f"[cyan]{label}[/cyan]", total=len(items))
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            futures = {executor.submit(process, index, item): index for index, item in enumerate(items)}
            for future in as_completed(futures):
                try:
                    future.result()
                finally:
                    progress.update(task, advance=1)

    if show_progress:
        console.print(f"[green]✔ {len(results)} checks completed using {max_workers} threads.[/green]")
    return [results[index] for index in range(len(items))]
