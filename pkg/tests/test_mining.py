import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from armcache.mining import (
    Transaction,
    TransactionLog,
    build_related_index,
    mine_frequent,
)


def tx(*items, at=0.0):
    return Transaction(frozenset(items), at)


def brute_force_frequent(transactions, min_support):
    """Independent oracle: enumerate all 2^n - 1 itemsets and count containment."""
    total = len(transactions)
    if total == 0:
        return {}
    threshold = math.ceil(min_support * total)
    universe = sorted(set().union(*(t.items for t in transactions)))
    out = {}
    for r in range(1, len(universe) + 1):
        for combo in itertools.combinations(universe, r):
            s = frozenset(combo)
            count = sum(1 for t in transactions if s <= t.items)
            if count >= threshold:
                out[s] = count
    return out


class TestTransactionLog:
    def test_first_request_opens_session(self):
        log = TransactionLog(capacity=10, gamma=0.5)
        log.log_request(3, 1.0)
        assert log.open_session == ({3}, 1.0)
        assert len(log) == 0

    def test_request_within_gamma_extends_session(self):
        log = TransactionLog(capacity=10, gamma=0.5)
        log.log_request(3, 1.0)
        log.log_request(7, 1.2)
        assert log.open_session == ({3, 7}, 1.2)
        assert len(log) == 0

    def test_gap_beyond_gamma_closes_session(self):
        log = TransactionLog(capacity=10, gamma=0.5)
        log.log_request(3, 1.0)
        log.log_request(7, 1.2)
        log.log_request(2, 5.0)
        assert len(log) == 1
        assert log.transactions()[0].items == frozenset({3, 7})
        assert log.open_session == ({2}, 5.0)

    def test_flush_noop_without_open_session(self):
        log = TransactionLog(capacity=4, gamma=0.5)
        log.flush_session(9.0)
        assert len(log) == 0 and log.open_session is None

    def test_flush_closes_open_session(self):
        log = TransactionLog(capacity=4, gamma=0.5)
        log.log_request(5, 1.0)
        log.flush_session(2.0)
        assert log.open_session is None
        assert log.transactions()[0].items == frozenset({5})

    def test_flush_on_full_log_overwrites_oldest(self):
        log = TransactionLog(capacity=4, gamma=0.5)
        for i in range(4):
            log.log_request(i, 10.0 * i)
        log.log_request(1, 100.0)
        log.log_request(2, 100.0)
        log.flush_session(101.0)
        stored = [t.items for t in log.transactions()]
        assert len(stored) == 4
        assert stored[-1] == frozenset({1, 2})
        assert frozenset({0}) not in stored  # oldest evicted

    @given(st.lists(st.integers(0, 9), min_size=1, max_size=60))
    def test_capacity_bound_and_last_k_retention(self, items):
        cap = 5
        log = TransactionLog(capacity=cap, gamma=0.5)
        # one transaction per item: gaps of 1.0 > gamma
        for k, item in enumerate(items):
            log.log_request(item, float(k))
        log.flush_session(float(len(items)))
        stored = [t.items for t in log.transactions()]
        assert len(stored) <= cap
        expected = [frozenset({i}) for i in items[-cap:]]
        assert stored == expected


class TestMineFrequent:
    def test_empty_transactions(self):
        assert mine_frequent([], 0.8).itemsets == {}

    def test_single_transaction_all_subsets(self):
        table = mine_frequent([tx(1, 2)], 1.0)
        assert table.itemsets == {
            frozenset({1}): 1,
            frozenset({2}): 1,
            frozenset({1, 2}): 1,
        }

    def test_four_transactions_half_support(self):
        txs = [tx(1, 2, 3), tx(1, 2), tx(1, 3), tx(1)]
        table = mine_frequent(txs, 0.5)
        # frozen from brute-force enumeration of all 2^3 - 1 itemsets
        assert table.itemsets == {
            frozenset({1}): 4,
            frozenset({2}): 2,
            frozenset({3}): 2,
            frozenset({1, 2}): 2,
            frozenset({1, 3}): 2,
        }

    @pytest.mark.parametrize("bad", [0.0, -0.1, 1.5])
    def test_min_support_out_of_range(self, bad):
        with pytest.raises(ValueError):
            mine_frequent([tx(1)], bad)

    @settings(max_examples=150, deadline=None)
    @given(
        st.lists(
            st.frozensets(st.integers(0, 9), min_size=1, max_size=6),
            min_size=0,
            max_size=40,
        ),
        st.sampled_from([0.2, 0.5, 0.8]),
    )
    def test_matches_brute_force_oracle(self, itemsets, min_support):
        txs = [Transaction(s, float(k)) for k, s in enumerate(itemsets)]
        assert mine_frequent(txs, min_support).itemsets == brute_force_frequent(txs, min_support)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.frozensets(st.integers(0, 7), min_size=1, max_size=6),
            min_size=1,
            max_size=25,
        ),
        st.sampled_from([0.3, 0.6]),
    )
    def test_downward_closure(self, itemsets, min_support):
        txs = [Transaction(s, 0.0) for s in itemsets]
        table = mine_frequent(txs, min_support).itemsets
        for itemset, count in table.items():
            for r in range(1, len(itemset)):
                for sub in itertools.combinations(itemset, r):
                    assert table[frozenset(sub)] >= count

    def test_max_len_truncates_by_size(self):
        txs = [tx(1, 2, 3)] * 3
        full = mine_frequent(txs, 1.0).itemsets
        pairs = mine_frequent(txs, 1.0, max_len=2).itemsets
        assert pairs == {s: c for s, c in full.items() if len(s) <= 2}
        assert frozenset({1, 2, 3}) in full and frozenset({1, 2, 3}) not in pairs

    def test_max_len_zero_rejected(self):
        with pytest.raises(ValueError):
            mine_frequent([tx(1)], 0.5, max_len=0)

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(
            st.frozensets(st.integers(0, 8), min_size=1, max_size=6),
            min_size=1,
            max_size=25,
        ),
        st.sampled_from([0.3, 0.6, 1.0]),
    )
    def test_max_len_matches_filtered_full_mining(self, itemsets, min_support):
        txs = [Transaction(s, 0.0) for s in itemsets]
        full = mine_frequent(txs, min_support).itemsets
        for cap in (1, 2, 3):
            capped = mine_frequent(txs, min_support, max_len=cap).itemsets
            assert capped == {s: c for s, c in full.items() if len(s) <= cap}

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.frozensets(st.integers(0, 7), min_size=1, max_size=5),
            min_size=1,
            max_size=20,
        ),
        st.randoms(use_true_random=False),
        st.sampled_from([0.25, 0.5]),
    )
    def test_permutation_invariance(self, itemsets, rnd, min_support):
        txs = [Transaction(s, 0.0) for s in itemsets]
        shuffled = list(txs)
        rnd.shuffle(shuffled)
        assert (
            mine_frequent(txs, min_support).itemsets
            == mine_frequent(shuffled, min_support).itemsets
        )


class TestRelatedIndex:
    def test_from_mined_table(self):
        txs = [tx(1, 2, 3), tx(1, 2), tx(1, 3), tx(1)]
        index = build_related_index(mine_frequent(txs, 0.5))
        assert index.get(1) == frozenset({2, 3})
        assert index.get(2) == frozenset({1})
        assert index.get(3) == frozenset({1})

    def test_empty_table(self):
        index = build_related_index(mine_frequent([], 0.8))
        assert index.related == {}
        assert index.get(4) == frozenset()

    def test_singleton_only_table_gives_empty_sets(self):
        txs = [tx(4, at=0.0), tx(6, at=1.0)] * 5
        index = build_related_index(mine_frequent(txs, 0.4))
        assert index.get(4) == frozenset()
        assert index.get(6) == frozenset()

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(
            st.frozensets(st.integers(0, 8), min_size=1, max_size=5),
            min_size=1,
            max_size=20,
        )
    )
    def test_symmetry_and_irreflexivity(self, itemsets):
        txs = [Transaction(s, 0.0) for s in itemsets]
        index = build_related_index(mine_frequent(txs, 0.3))
        for k, related in index.related.items():
            assert k not in related
            for other in related:
                assert k in index.get(other)

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(
            st.frozensets(st.integers(0, 8), min_size=1, max_size=6),
            min_size=1,
            max_size=25,
        ),
        st.sampled_from([0.3, 0.6]),
    )
    def test_pair_mining_gives_identical_index(self, itemsets, min_support):
        # downward closure: every co-membership in a large frequent itemset
        # is witnessed by a frequent pair, so mining pairs loses nothing
        txs = [Transaction(s, 0.0) for s in itemsets]
        full = build_related_index(mine_frequent(txs, min_support))
        pairs = build_related_index(mine_frequent(txs, min_support, max_len=2))
        assert pairs.related == full.related
