"""
Runs one job per seed on a pool of worker threads.

The job is called as job(seed) and returns a result; progress is reported through the callback:

    callback(timestamp, message_type, identifier, value)
"""

import queue
import threading
import time


class SweepRunner:

    MESSAGE_TYPE_STATUS_START = "start"
    MESSAGE_TYPE_STATUS_ERROR = "error"
    MESSAGE_TYPE_STATUS_FINISHED = "finished"
    MESSAGE_TYPE_VALUE = "value"

    DEFAULT_WORKERS = 4

    def __init__(self, job, seeds, callback=None, workers=DEFAULT_WORKERS, logger=None):
        self._job = job
        self._seeds = list(seeds)
        self._callback = callback
        self._workers = max(1, min(int(workers), max(1, len(self._seeds))))
        self._logger = logger
        self._threads = []
        self._stop_event = threading.Event()
        self._lock = threading.Lock()
        self._seed_queue = None
        self._results = {}
        self._errors = {}

    ###########
    # Private #
    ###########

    def _send_callback(self, message_type, identifier, value):
        if self._callback is not None:
            with self._lock:
                self._callback(int(time.time()), message_type, identifier, value)

    def _run_worker(self):
        while not self._stop_event.is_set():
            try:
                seed = self._seed_queue.get_nowait()
            except queue.Empty:
                break
            try:
                result = self._job(seed)
            except Exception as e:
                with self._lock:
                    self._errors[seed] = e
                if self._logger is not None:
                    self._logger.error(f"Seed {seed} failed: {e}")
                self._send_callback(self.MESSAGE_TYPE_STATUS_ERROR, seed, str(e))
                continue
            with self._lock:
                self._results[seed] = result
            self._send_callback(self.MESSAGE_TYPE_VALUE, seed, result)

    def _clean_up(self):
        self._threads = []

    ##########
    # Public #
    ##########

    def start(self):
        if self.is_running():
            return
        self._results = {}
        self._errors = {}
        self._seed_queue = queue.Queue()
        for seed in self._seeds:
            self._seed_queue.put(seed)
        self._stop_event.clear()
        if self._logger is not None:
            self._logger.info(f"Start sweep over {len(self._seeds)} seeds with "
                              f"{self._workers} workers")
        self._send_callback(self.MESSAGE_TYPE_STATUS_START, "Start sweep", len(self._seeds))
        self._threads = [threading.Thread(target=self._run_worker, daemon=True)
                         for _ in range(self._workers)]
        for thread in self._threads:
            thread.start()

    def wait(self):
        for thread in self._threads:
            thread.join()
        self._clean_up()
        self._send_callback(self.MESSAGE_TYPE_STATUS_FINISHED, "Sweep finished",
                            len(self._results))
        if self._logger is not None:
            self._logger.info(f"Sweep finished: {len(self._results)} done, "
                              f"{len(self._errors)} failed")

    def run(self):
        self.start()
        self.wait()
        return self.get_results()

    def stop(self):
        if self.is_running():
            self._stop_event.set()
        self.wait()

    def is_running(self):
        return any(map(lambda x: x.is_alive(), self._threads))

    def get_workers(self):
        return self._workers

    def get_results(self):
        return {seed: self._results[seed] for seed in sorted(self._results)}

    def get_errors(self):
        return {seed: self._errors[seed] for seed in sorted(self._errors)}

    @staticmethod
    def parse_seeds(text):
        """Parses 'a..b' (inclusive), 'a,b,c' or a single seed."""
        text = text.strip()
        if ".." in text:
            first, last = text.split("..", 1)
            first = int(first)
            last = int(last)
            if last < first:
                raise ValueError(f"Empty seed range '{text}'")
            return list(range(first, last + 1))
        return list(map(int, text.split(",")))


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_sweep_runner import TestSweepRunner

    TestSweepRunner().run(True)
