import pytest

# one pass/fail line per acceptance criterion in the terminal summary
_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{name}: {outcome.upper()}")


def grid_triangulation(rows, flip=()):
    """Triangles of a 3x3 grid of quads with corner labels ``rows``
    (bottom to top), each cut along its bottom-left/top-right diagonal
    except the cells listed in ``flip`` which use the other diagonal."""
    out = []
    for r in range(3):
        for c in range(3):
            bl, br = rows[r][c], rows[r][c + 1]
            tl, tr = rows[r + 1][c], rows[r + 1][c + 1]
            if (r, c) in flip:
                out += [(bl, br, tl), (br, tr, tl)]
            else:
                out += [(bl, br, tr), (bl, tr, tl)]
    return out


TETRAHEDRON = [("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")]

# 3x3 identified grids copied from the standard square diagrams; the
# projective-plane grid needs one diagonal flipped to stay vertex-faithful
# (the printed all-parallel version repeats a triangle's vertex set).
TORUS_GRID = grid_triangulation(
    [
        ["a", "b", "c", "a"],
        ["e", "i", "j", "e"],
        ["d", "f", "g", "d"],
        ["a", "b", "c", "a"],
    ]
)
PROJECTIVE_GRID = grid_triangulation(
    [
        ["d", "c", "b", "a"],
        ["e", "j", "k", "f"],
        ["f", "g", "h", "e"],
        ["a", "b", "c", "d"],
    ],
    flip=((0, 2),),
)
KLEIN_GRID = grid_triangulation(
    [
        ["a", "b", "c", "a"],
        ["e", "i", "j", "d"],
        ["d", "f", "g", "e"],
        ["a", "b", "c", "a"],
    ]
)


@pytest.fixture
def figure_triangulations():
    return {
        "sphere": TETRAHEDRON,
        "torus": TORUS_GRID,
        "projective": PROJECTIVE_GRID,
        "klein": KLEIN_GRID,
    }
