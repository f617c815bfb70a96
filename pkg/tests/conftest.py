import numpy as np
import pytest

from vqalab import Graph, parse_graph


@pytest.fixture
def single_edge():
    return parse_graph("2\n1 2")


@pytest.fixture
def k3():
    return parse_graph("3\n1 2\n2 3\n1 3")


@pytest.fixture
def c5():
    return parse_graph("5\n1 2\n2 3\n3 4\n4 5\n1 5")


# d=6 graph with a strictly suboptimal single-flip local optimum
# (double star: center path 0-3, leaves on both centers; maxcut 5, but the
# all-equal-leaves split cutting 4 edges is a strict local minimum).
@pytest.fixture
def trap_graph():
    return parse_graph("6\n1 2\n1 3\n1 4\n4 5\n4 6")


def central_difference_gradient(f, x, h=1e-5):
    """Independent finite-difference oracle for first derivatives."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def central_difference_hessian(f, x, h=1e-4):
    """Independent finite-difference oracle for second derivatives."""
    x = np.asarray(x, dtype=float)
    n = x.size
    hess = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = h
            ej[j] = h
            hess[i, j] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4 * h * h)
    return hess
