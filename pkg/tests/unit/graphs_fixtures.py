from tropocat.graphs.stable_graph import StableGraph


def theta(weights=(0, 0)):
    return StableGraph.from_edges(list(weights), [(0, 1)] * 3)


def dumbbell():
    return StableGraph.from_edges([0, 0], [(0, 0), (0, 1), (1, 1)])


def figure_eight(weight=0):
    return StableGraph.from_edges([weight], [(0, 0), (0, 0)])


def k4():
    return StableGraph.from_edges([0] * 4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
