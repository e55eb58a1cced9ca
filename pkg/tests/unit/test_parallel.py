"""
Tests for bounded member execution
"""

import threading
import time

import pytest

from app.utils.parallel import gather_members, map_members


def square(x: int) -> int:
    return x * x


def fail_on_three(x: int) -> int:
    if x == 3:
        raise RuntimeError("member 3 failed")
    return x


class TestMapMembers:
    """Test the blocking wrapper"""

    def test_inline_preserves_order(self):
        assert map_members(square, [3, 1, 2]) == [9, 1, 4]

    def test_inline_captures_exceptions(self):
        results = map_members(fail_on_three, [1, 3, 5])
        assert results[0] == 1
        assert isinstance(results[1], RuntimeError)
        assert results[2] == 5

    def test_threads_preserve_order(self):
        assert map_members(square, list(range(8)), jobs=3) == [x * x for x in range(8)]

    def test_threads_capture_exceptions(self):
        results = map_members(fail_on_three, [1, 3, 5], jobs=2)
        assert isinstance(results[1], RuntimeError)
        assert str(results[1]) == "member 3 failed"

    def test_empty(self):
        assert map_members(square, [], jobs=4) == []


class TestGatherMembers:
    """Test the concurrency bound"""

    @pytest.mark.asyncio
    async def test_bound_respected(self):
        lock = threading.Lock()
        state = {"active": 0, "peak": 0}

        def member(_):
            with lock:
                state["active"] += 1
                state["peak"] = max(state["peak"], state["active"])
            time.sleep(0.02)
            with lock:
                state["active"] -= 1
            return True

        results = await gather_members(member, list(range(6)), jobs=2)
        assert results == [True] * 6
        assert state["peak"] <= 2

    @pytest.mark.asyncio
    async def test_zero_jobs_runs_serially(self):
        assert await gather_members(square, [2, 4], jobs=0) == [4, 16]
