# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float-mode transportation network simplex.

Same pivoting rules as the pure-Python engine in netsimplex.py (Bland
entering, lexicographic leaving), so on non-degenerate float instances
the two land on the same optimal vertex.  Exact-arithmetic solves never
come here; they always run the pure engine.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

cdef long _MAX_PIVOTS = 500000


def solve_transportation_f64(cost_rows, supply_list, demand_list):
    """Minimize sum(c[i][j] * x[i][j]) subject to row/column marginals.

    Arguments are plain Python lists of floats.  Returns
    (total_cost, [(i, j, flow), ...]) with positive flows only.
    """
    cdef Py_ssize_t m = len(supply_list)
    cdef Py_ssize_t n = len(demand_list)
    cdef Py_ssize_t nodes = m + n
    cdef Py_ssize_t cells = m * n
    cdef Py_ssize_t i, j, k, e
    cdef long a, b, pivot, ie, je, head, tail, node, nxt, cell, cl
    cdef long nbasis, cyclen, leaving
    cdef bint improved, found
    cdef double q, theta, red, tol, maxc, total

    cdef double *c = <double *> PyMem_Malloc(cells * sizeof(double))
    cdef double *x = <double *> PyMem_Malloc(cells * sizeof(double))
    cdef double *u = <double *> PyMem_Malloc(m * sizeof(double))
    cdef double *v = <double *> PyMem_Malloc(n * sizeof(double))
    cdef double *rs = <double *> PyMem_Malloc(m * sizeof(double))
    cdef double *rd = <double *> PyMem_Malloc(n * sizeof(double))
    # basis as a list of cell ids plus each cell's position in that list
    cdef long *basis = <long *> PyMem_Malloc(nodes * sizeof(long))
    cdef long *pos = <long *> PyMem_Malloc(cells * sizeof(long))
    # per-pivot scratch: CSR adjacency over tree nodes, BFS state, cycle
    cdef long *deg = <long *> PyMem_Malloc(nodes * sizeof(long))
    cdef long *off = <long *> PyMem_Malloc((nodes + 1) * sizeof(long))
    cdef long *nbr = <long *> PyMem_Malloc(2 * nodes * sizeof(long))
    cdef long *via = <long *> PyMem_Malloc(2 * nodes * sizeof(long))
    cdef long *parent = <long *> PyMem_Malloc(nodes * sizeof(long))
    cdef long *pedge = <long *> PyMem_Malloc(nodes * sizeof(long))
    cdef long *queue = <long *> PyMem_Malloc(nodes * sizeof(long))
    cdef long *cyc = <long *> PyMem_Malloc((nodes + 1) * sizeof(long))

    if (c == NULL or x == NULL or u == NULL or v == NULL or rs == NULL
            or rd == NULL or basis == NULL or pos == NULL or deg == NULL
            or off == NULL or nbr == NULL or via == NULL or parent == NULL
            or pedge == NULL or queue == NULL or cyc == NULL):
        _free_all(c, x, u, v, rs, rd, basis, pos, deg, off, nbr, via,
                  parent, pedge, queue, cyc)
        raise MemoryError()

    try:
        maxc = 1.0
        for i in range(m):
            row = cost_rows[i]
            for j in range(n):
                c[i * n + j] = row[j]
                if c[i * n + j] > maxc:
                    maxc = c[i * n + j]
        tol = 1e-11 * maxc
        for k in range(cells):
            x[k] = 0.0
            pos[k] = -1
        for i in range(m):
            rs[i] = supply_list[i]
        for j in range(n):
            rd[j] = demand_list[j]

        # northwest-corner staircase: m+n-1 basic cells
        nbasis = 0
        i = 0
        j = 0
        while True:
            q = rs[i] if rs[i] < rd[j] else rd[j]
            x[i * n + j] = q
            pos[i * n + j] = nbasis
            basis[nbasis] = i * n + j
            nbasis += 1
            rs[i] -= q
            rd[j] -= q
            if i == m - 1 and j == n - 1:
                break
            if i == m - 1:
                j += 1
            elif j == n - 1:
                i += 1
            elif rs[i] == 0:
                i += 1
            else:
                j += 1

        for pivot in range(_MAX_PIVOTS):
            # CSR adjacency of the basis tree (rows 0..m-1, cols m..m+n-1)
            for k in range(nodes):
                deg[k] = 0
            for e in range(nbasis):
                cell = basis[e]
                deg[cell // n] += 1
                deg[m + cell % n] += 1
            off[0] = 0
            for k in range(nodes):
                off[k + 1] = off[k] + deg[k]
                deg[k] = 0
            for e in range(nbasis):
                cell = basis[e]
                a = cell // n
                b = m + cell % n
                nbr[off[a] + deg[a]] = b
                via[off[a] + deg[a]] = cell
                deg[a] += 1
                nbr[off[b] + deg[b]] = a
                via[off[b] + deg[b]] = cell
                deg[b] += 1

            # duals by search from row 0 (u[0] = 0)
            for k in range(nodes):
                parent[k] = -2
            u[0] = 0.0
            parent[0] = -1
            head = 0
            queue[0] = 0
            tail = 1
            while head < tail:
                node = queue[head]
                head += 1
                for e in range(off[node], off[node + 1]):
                    nxt = nbr[e]
                    if parent[nxt] == -2:
                        parent[nxt] = node
                        cell = via[e]
                        if nxt >= m:
                            v[nxt - m] = c[cell] - u[cell // n]
                        else:
                            u[nxt] = c[cell] - v[cell % n]
                        queue[tail] = nxt
                        tail += 1

            # Bland entering: first cell with negative reduced cost
            improved = False
            ie = 0
            je = 0
            for ie in range(m):
                for je in range(n):
                    if pos[ie * n + je] >= 0:
                        continue
                    red = c[ie * n + je] - u[ie] - v[je]
                    if red < -tol:
                        improved = True
                        break
                if improved:
                    break
            if not improved:
                break

            # path from row ie to col je in the tree closes the cycle
            for k in range(nodes):
                parent[k] = -2
            parent[ie] = -1
            queue[0] = ie
            head = 0
            tail = 1
            found = False
            while head < tail and not found:
                node = queue[head]
                head += 1
                for e in range(off[node], off[node + 1]):
                    nxt = nbr[e]
                    if parent[nxt] == -2:
                        parent[nxt] = node
                        pedge[nxt] = via[e]
                        queue[tail] = nxt
                        tail += 1
                        if nxt == m + je:
                            found = True
                            break
            if not found:
                raise RuntimeError("basis tree lost connectivity")

            # walk back from col je; cells alternate -,+,-,... and the
            # entering cell itself is the extra '+'
            cyclen = 0
            node = m + je
            while parent[node] != -1:
                cyc[cyclen] = pedge[node]
                cyclen += 1
                node = parent[node]

            theta = -1.0
            leaving = -1
            for k in range(0, cyclen, 2):
                cl = cyc[k]
                if theta < 0.0 or x[cl] < theta or (x[cl] == theta and cl < leaving):
                    theta = x[cl]
                    leaving = cl
            for k in range(cyclen):
                if k % 2 == 0:
                    x[cyc[k]] -= theta
                else:
                    x[cyc[k]] += theta

            # swap leaving for entering in the basis list
            e = pos[leaving]
            basis[e] = basis[nbasis - 1]
            pos[basis[e]] = e
            nbasis -= 1
            pos[leaving] = -1
            x[leaving] = 0.0
            basis[nbasis] = ie * n + je
            pos[ie * n + je] = nbasis
            nbasis += 1
            x[ie * n + je] += theta
        else:
            raise RuntimeError("network simplex failed to terminate")

        total = 0.0
        out = []
        for e in range(nbasis):
            cell = basis[e]
            if x[cell] > 1e-14:
                total += c[cell] * x[cell]
                out.append((cell // n, cell % n, x[cell]))
        out.sort()
        return total, out
    finally:
        _free_all(c, x, u, v, rs, rd, basis, pos, deg, off, nbr, via,
                  parent, pedge, queue, cyc)


cdef void _free_all(double *c, double *x, double *u, double *v, double *rs,
                    double *rd, long *basis, long *pos, long *deg, long *off,
                    long *nbr, long *via, long *parent, long *pedge,
                    long *queue, long *cyc) noexcept:
    PyMem_Free(c)
    PyMem_Free(x)
    PyMem_Free(u)
    PyMem_Free(v)
    PyMem_Free(rs)
    PyMem_Free(rd)
    PyMem_Free(basis)
    PyMem_Free(pos)
    PyMem_Free(nbr)
    PyMem_Free(via)
    PyMem_Free(deg)
    PyMem_Free(off)
    PyMem_Free(parent)
    PyMem_Free(pedge)
    PyMem_Free(queue)
    PyMem_Free(cyc)
