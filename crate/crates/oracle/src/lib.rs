//! Brute-force reference computations for the test suites.
//!
//! Nothing here depends on `segal-core`. Simplicial sets are written down
//! from their textbook descriptions, and homology uses a separate
//! diagonalization routine over `i128`.

/// Face and degeneracy tables: `faces[p][i][x]` for `p >= 1`,
/// `degeneracies[p][i][x]` for `p < dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub sizes: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

impl Tables {
    pub fn dim(&self) -> usize {
        self.sizes.len() - 1
    }
}

fn encode(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

fn decode(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = x % base;
        x /= base;
    }
    out
}

/// The nerve of a monoid given by its multiplication table. A `p`-simplex is
/// a word `(m₁, …, m_p)`, coded with `m₁` as the most significant digit.
pub fn monoid_nerve(table: &[Vec<usize>], unit: usize, dim: usize) -> Tables {
    let order = table.len();
    let sizes: Vec<usize> = (0..=dim).map(|p| order.pow(p as u32)).collect();
    let mut faces = vec![Vec::new()];
    for p in 1..=dim {
        let mut level = Vec::new();
        for i in 0..=p {
            let mut t = Vec::with_capacity(sizes[p]);
            for x in 0..sizes[p] {
                let w = decode(x, order, p);
                let mut v = Vec::with_capacity(p - 1);
                for (k, &m) in w.iter().enumerate() {
                    if i == 0 && k == 0 || i == p && k == p - 1 {
                        continue;
                    }
                    if i > 0 && i < p && k == i {
                        continue;
                    }
                    if i > 0 && i < p && k == i - 1 {
                        v.push(table[m][w[i]]);
                    } else {
                        v.push(m);
                    }
                }
                t.push(encode(&v, order));
            }
            level.push(t);
        }
        faces.push(level);
    }
    let mut degeneracies = Vec::new();
    for p in 0..=dim {
        if p == dim {
            degeneracies.push(Vec::new());
            continue;
        }
        let mut level = Vec::new();
        for i in 0..=p {
            let t = (0..sizes[p])
                .map(|x| {
                    let mut w = decode(x, order, p);
                    w.insert(i, unit);
                    encode(&w, order)
                })
                .collect();
            level.push(t);
        }
        degeneracies.push(level);
    }
    Tables {
        sizes,
        faces,
        degeneracies,
    }
}

/// Applies one nerve operation to a list of words: drop the first, drop the
/// last, multiply neighbours, or insert the unit.
fn nerve_face<T: Clone>(rows: &[T], i: usize, merge: impl Fn(&T, &T) -> T) -> Vec<T> {
    let p = rows.len();
    let mut out = Vec::with_capacity(p - 1);
    for k in 0..p {
        if (i == 0 && k == 0) || (i == p && k == p - 1) || (i > 0 && i < p && k == i) {
            continue;
        }
        if i > 0 && i < p && k == i - 1 {
            out.push(merge(&rows[k], &rows[k + 1]));
        } else {
            out.push(rows[k].clone());
        }
    }
    out
}

/// The diagonal of the double nerve of an abelian group: a `p`-simplex is a
/// `p × p` matrix over the group, coded row-major with the first entry most
/// significant. `d_i` acts as the nerve face on rows and then on columns;
/// `s_i` inserts a unit row and a unit column.
pub fn matrix_nerve(table: &[Vec<usize>], unit: usize, dim: usize) -> Tables {
    let order = table.len();
    let sizes: Vec<usize> = (0..=dim).map(|p| order.pow((p * p) as u32)).collect();
    let to_rows = |x: usize, p: usize| -> Vec<Vec<usize>> {
        let flat = decode(x, order, p * p);
        flat.chunks(p.max(1))
            .take(p)
            .map(<[usize]>::to_vec)
            .collect()
    };
    let from_rows = |rows: &[Vec<usize>]| -> usize {
        let flat: Vec<usize> = rows.iter().flatten().copied().collect();
        encode(&flat, order)
    };
    let add = |a: &usize, b: &usize| table[*a][*b];
    let mut faces = vec![Vec::new()];
    for p in 1..=dim {
        let level = (0..=p)
            .map(|i| {
                (0..sizes[p])
                    .map(|x| {
                        let rows = nerve_face(&to_rows(x, p), i, |r, s| {
                            r.iter().zip(s).map(|(a, b)| add(a, b)).collect()
                        });
                        let rows: Vec<Vec<usize>> =
                            rows.iter().map(|r| nerve_face(r, i, add)).collect();
                        from_rows(&rows)
                    })
                    .collect()
            })
            .collect();
        faces.push(level);
    }
    let mut degeneracies = Vec::new();
    for p in 0..=dim {
        if p == dim {
            degeneracies.push(Vec::new());
            continue;
        }
        let level = (0..=p)
            .map(|i| {
                (0..sizes[p])
                    .map(|x| {
                        let mut rows = to_rows(x, p);
                        for r in rows.iter_mut() {
                            r.insert(i, unit);
                        }
                        rows.insert(i, vec![unit; p + 1]);
                        from_rows(&rows)
                    })
                    .collect()
            })
            .collect();
        degeneracies.push(level);
    }
    Tables {
        sizes,
        faces,
        degeneracies,
    }
}

/// Boundary matrices of the normalized chain complex up to level `top`,
/// as dense row lists; entry `[p]` maps level `p` to level `p - 1`.
pub fn normalized_boundaries(s: &Tables, top: usize) -> Vec<Vec<Vec<i64>>> {
    let nondeg: Vec<Vec<usize>> = (0..=top)
        .map(|p| {
            let mut deg = vec![false; s.sizes[p]];
            if p > 0 {
                for t in &s.degeneracies[p - 1] {
                    for &y in t {
                        deg[y] = true;
                    }
                }
            }
            (0..s.sizes[p]).filter(|&x| !deg[x]).collect()
        })
        .collect();
    let mut out = vec![Vec::new()];
    for p in 1..=top {
        let index: std::collections::HashMap<usize, usize> = nondeg[p - 1]
            .iter()
            .enumerate()
            .map(|(k, &x)| (x, k))
            .collect();
        let mut m = vec![vec![0i64; nondeg[p].len()]; nondeg[p - 1].len()];
        for (j, &x) in nondeg[p].iter().enumerate() {
            for i in 0..=p {
                if let Some(&r) = index.get(&s.faces[p][i][x]) {
                    m[r][j] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        out.push(m);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rank and invariant factors (including ones) of an integer matrix, by
/// repeated two-by-two Bézout steps on the pivot row and column.
pub fn invariant_factors(rows: &[Vec<i64>]) -> (usize, Vec<u64>) {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] != 0)
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            for i in t + 1..m {
                if a[i][t] != 0 {
                    let (x, y) = (a[t][t], a[i][t]);
                    let (g, s, u) = bezout(x, y);
                    let (xg, yg) = (x / g, y / g);
                    for j in t..n {
                        let (p, q) = (a[t][j], a[i][j]);
                        a[t][j] = s * p + u * q;
                        a[i][j] = -yg * p + xg * q;
                    }
                }
            }
            for j in t + 1..n {
                if a[t][j] != 0 {
                    let (x, y) = (a[t][t], a[t][j]);
                    let (g, s, u) = bezout(x, y);
                    let (xg, yg) = (x / g, y / g);
                    for row in a.iter_mut().take(m).skip(t) {
                        let (p, q) = (row[t], row[j]);
                        row[t] = s * p + u * q;
                        row[j] = -yg * p + xg * q;
                    }
                }
            }
            let clean_col = (t + 1..m).all(|i| a[i][t] == 0);
            let clean_row = (t + 1..n).all(|j| a[t][j] == 0);
            if !(clean_col && clean_row) {
                continue;
            }
            let pivot = a[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    for j in t..n {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
        t += 1;
    }
    (diag.len(), diag)
}

fn bezout(x: i128, y: i128) -> (i128, i128, i128) {
    // s·x + u·y = g with g > 0 dividing both; plain elimination when x | y
    if y % x == 0 {
        return (x.abs(), x.signum(), 0);
    }
    let (mut r0, mut r1, mut s0, mut s1, mut u0, mut u1) = (x, y, 1i128, 0i128, 0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (u0, u1) = (u1, u0 - q * u1);
    }
    if r0 < 0 {
        (-r0, -s0, -u0)
    } else {
        (r0, s0, u0)
    }
}

/// `H_p` as `(free rank, nonunit invariant factors)`; needs `p < dim`.
pub fn homology(s: &Tables, p: usize) -> (usize, Vec<u64>) {
    let b = normalized_boundaries(s, p + 1);
    let n_p = nondeg_count(s, p);
    let rank_out = if p == 0 {
        0
    } else {
        invariant_factors(&b[p]).0
    };
    let (rank_in, factors) = invariant_factors(&b[p + 1]);
    let torsion = factors.into_iter().filter(|&d| d > 1).collect();
    (n_p - rank_out - rank_in, torsion)
}

fn nondeg_count(s: &Tables, p: usize) -> usize {
    let mut deg = vec![false; s.sizes[p]];
    if p > 0 {
        for t in &s.degeneracies[p - 1] {
            for &y in t {
                deg[y] = true;
            }
        }
    }
    deg.iter().filter(|d| !**d).count()
}

/// The multiplication table of `Z/n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

/// The product table with `(a, b)` coded as `a·|B| + b`.
pub fn product_table(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let nb = b.len();
    let n = a.len() * nb;
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| a[x / nb][y / nb] * nb + b[x % nb][y % nb])
                .collect()
        })
        .collect()
}

/// Low-degree homology of `K(A, k)` for `A = ⨁ Z/dᵢ` (each `dᵢ > 1`):
/// `H₀ = Z`; for `k = 1`, `H₁ = A` and `H₂ = ⨁_{i<j} Z/gcd(dᵢ, dⱼ)`; for
/// `k >= 2`, `H_q = 0` for `0 < q < k`, `H_k = A` and `H_{k+1} = 0`.
/// Returns the list of cyclic orders (0 for `Z`), or `None` outside that range.
pub fn eilenberg_maclane_low(cyclic: &[u64], k: usize, q: usize) -> Option<Vec<u64>> {
    match (k, q) {
        (_, 0) => Some(vec![0]),
        (1, 1) => Some(cyclic.to_vec()),
        (1, 2) => {
            let mut out = Vec::new();
            for i in 0..cyclic.len() {
                for j in i + 1..cyclic.len() {
                    out.push(gcd(cyclic[i] as i128, cyclic[j] as i128) as u64);
                }
            }
            Some(out)
        }
        (k, q) if k >= 2 && q < k => Some(Vec::new()),
        (k, q) if k >= 2 && q == k => Some(cyclic.to_vec()),
        (k, q) if k >= 2 && q == k + 1 => Some(Vec::new()),
        _ => None,
    }
}

/// Invariant factors (nonunit, ascending) of `⨁ Z/cᵢ`.
pub fn normalize_cyclic(orders: &[u64]) -> Vec<u64> {
    let m: Vec<Vec<i64>> = (0..orders.len())
        .map(|i| {
            (0..orders.len())
                .map(|j| if i == j { orders[i] as i64 } else { 0 })
                .collect()
        })
        .collect();
    let (_, f) = invariant_factors(&m);
    let mut f: Vec<u64> = f.into_iter().filter(|&d| d > 1).collect();
    f.sort_unstable();
    f
}
