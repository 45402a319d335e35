from fractions import Fraction

from hypothesis import given, strategies as st

from symsub.linalg import RowSpace, SMat, int_det, integer_kernel, kron, matmul, smith_normal_form

small = st.integers(-6, 6)
mats = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


@given(mats)
def test_smith_normal_form(a):
    u, d, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == d
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1
    diag = [d[k][k] for k in range(min(len(d), len(d[0])))]
    for r in range(len(d)):
        for c in range(len(d[0])):
            if r != c:
                assert d[r][c] == 0
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert all(nz[k + 1] % nz[k] == 0 for k in range(len(nz) - 1))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))


def test_smith_frozen():
    _, d, _ = smith_normal_form([[2, 0], [0, 0]])
    assert [d[0][0], d[1][1]] == [2, 0]
    _, d, _ = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [d[0][0], d[1][1], d[2][2]] == [2, 6, 12]


@given(mats)
def test_integer_kernel(a):
    ker = integer_kernel(a)
    for v in ker:
        assert all(sum(row[j] * v[j] for j in range(len(v))) == 0 for row in a)
    # rank-nullity over Q
    rs = RowSpace()
    for row in a:
        rs.add(dict(enumerate(row)))
    assert len(ker) == len(a[0]) - len(rs)


@given(st.lists(st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=4), max_size=6))
def test_rowspace_membership(vecs):
    rs = RowSpace()
    for v in vecs:
        rs.add(v)
    for v in vecs:
        assert rs.contains(v)
    if len(vecs) >= 2:
        s = {}
        for v in vecs[:2]:
            for k, x in v.items():
                s[k] = s.get(k, 0) + 3 * x
        assert rs.contains(s)
    assert len(rs) <= 6


def test_rowspace_independence():
    rs = RowSpace()
    assert rs.add({0: 1, 1: 2})
    assert rs.add({1: 1})
    assert not rs.add({0: 3, 1: Fraction(1, 2)})
    assert not rs.contains({2: 1})


def test_sparse_matrices():
    a = SMat.from_dense([[1, 2], [0, 3]])
    b = SMat.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [3, 0]]
    assert (a + b - b) == a
    assert a.transpose().to_dense() == [[1, 0], [2, 3]]
    assert kron(SMat.identity(2), b).to_dense() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    r, c, x, y = a.first_difference(b)
    assert (r, c) == (0, 0) and (x, y) == (1, 0)
    assert SMat.identity(3).scale(0).is_zero()
