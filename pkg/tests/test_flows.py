import random
from fractions import Fraction
from math import comb

import pytest

from paulisched.baranyai import PartialState, _apply, _step_parts
from paulisched.flows import (
    FlowNetwork,
    ScaledFlow,
    check_flow,
    flow_value,
    max_flow_integral,
    round_flow,
)


def test_network_validation():
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 0, ())
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 1, ((0, 0, 1),))
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 1, ((0, 1, -1),))
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 3, ((0, 1, 1),))


class TestMaxFlow:
    def test_single_edge(self):
        net = FlowNetwork(2, 0, 1, ((0, 1, 5),))
        flow = max_flow_integral(net)
        assert flow_value(net, flow) == 5

    def test_two_disjoint_unit_paths(self):
        net = FlowNetwork(4, 0, 3, ((0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)))
        flow = max_flow_integral(net)
        assert flow_value(net, flow) == 2
        check_flow(net, flow)

    def test_bottleneck(self):
        net = FlowNetwork(4, 0, 3, ((0, 1, 4), (0, 2, 4), (1, 3, 1), (2, 3, 2)))
        assert flow_value(net, max_flow_integral(net)) == 3

    def test_scheduler_networks_reach_full_value(self):
        state = PartialState.initial(8)
        for _ in range(8):
            net, seed, mapping = _step_parts(state)
            flow = max_flow_integral(net)
            assert flow_value(net, flow) == comb(7, 3) == flow_value(net, seed)
            state = _apply(state, flow, mapping)


class TestCheckFlow:
    def test_capacity_violation(self):
        net = FlowNetwork(2, 0, 1, ((0, 1, 1),))
        with pytest.raises(ValueError):
            check_flow(net, ScaledFlow(2, (3,)))

    def test_conservation_violation(self):
        net = FlowNetwork(3, 0, 2, ((0, 1, 2), (1, 2, 2)))
        with pytest.raises(ValueError):
            check_flow(net, ScaledFlow(1, (2, 1)))

    def test_length_mismatch(self):
        net = FlowNetwork(2, 0, 1, ((0, 1, 1),))
        with pytest.raises(ValueError):
            check_flow(net, ScaledFlow(1, (1, 1)))


class TestRoundFlow:
    def test_already_integral_returned_unchanged(self):
        net = FlowNetwork(3, 0, 2, ((0, 1, 2), (1, 2, 2)))
        rounded = round_flow(net, ScaledFlow(3, (6, 6)))
        assert rounded == ScaledFlow(1, (2, 2))

    def test_half_cycle_rounds_to_a_valid_assignment(self):
        # s -> a -> {b, c} -> d -> t with both middle routes at 1/2
        edges = ((0, 1, 1), (1, 2, 1), (1, 3, 1), (2, 4, 1), (3, 4, 1), (4, 5, 1))
        net = FlowNetwork(6, 0, 5, edges)
        seed = ScaledFlow(2, (2, 1, 1, 1, 1, 2))
        rounded = round_flow(net, seed)
        check_flow(net, rounded)
        assert flow_value(net, rounded) == 1
        assert rounded.numerators in ((1, 1, 0, 1, 0, 1), (1, 0, 1, 0, 1, 1))

    def test_fractional_terminal_edge_rejected(self):
        net = FlowNetwork(3, 0, 2, ((0, 1, 1), (1, 2, 1)))
        with pytest.raises(ValueError):
            round_flow(net, ScaledFlow(2, (1, 1)))

    def test_infeasible_seed_rejected(self):
        net = FlowNetwork(3, 0, 2, ((0, 1, 1), (1, 2, 1)))
        with pytest.raises(ValueError):
            round_flow(net, ScaledFlow(2, (4, 4)))

    def test_scheduler_seeds_round_to_full_value(self):
        state = PartialState.initial(8)
        for _ in range(8):
            net, seed, mapping = _step_parts(state)
            rounded = round_flow(net, seed)
            check_flow(net, rounded)
            assert flow_value(net, rounded) == flow_value(net, seed) == comb(7, 3)
            state = _apply(state, rounded, mapping)

    def test_deterministic(self, fractional_case_maker):
        rng = random.Random(5)
        for _ in range(25):
            net, seed = fractional_case_maker(rng)
            assert round_flow(net, seed) == round_flow(net, seed)

    def test_random_two_layer_property(self, fractional_case_maker):
        rng = random.Random(20240817)
        for case in range(200):
            net, seed = fractional_case_maker(rng)
            value = flow_value(net, seed)
            rounded = round_flow(net, seed)
            check_flow(net, rounded)
            assert rounded.denominator == 1
            assert flow_value(net, rounded) == value, f"case {case} changed value"
            assert value == Fraction(int(value))  # terminal edges were integral
