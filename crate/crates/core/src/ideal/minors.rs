use crate::error::IdealError;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Ring};

/// Dense matrix of polynomials over a common ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(ring: Ring, rows: Vec<Vec<Polynomial>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        assert!(entries.iter().all(|e| e.ring() == ring));
        PolyMatrix {
            ring,
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    /// Rows are polynomials, columns are variables: `∂ p_i / ∂ x_{vars[j]}`.
    pub fn jacobian(ring: Ring, polys: &[Polynomial], vars: &[usize]) -> Self {
        let rows = polys
            .iter()
            .map(|p| {
                vars.iter()
                    .map(|&v| p.partial(v).expect("variable in range"))
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(ring, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    /// Determinant of the square submatrix on `rows` x `cols`, by cofactor
    /// expansion along the first selected row.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => self.ring.one(),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut det = self.ring.zero();
                let rest_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest_cols: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != k)
                        .map(|(_, &c)| c)
                        .collect();
                    let term = entry * &self.minor(rest_rows, &rest_cols);
                    det = if k % 2 == 0 { &det + &term } else { &det - &term };
                }
                det
            }
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The ideal of all `size x size` minors. `size = 0` gives the unit ideal.
pub fn minors_ideal(m: &PolyMatrix, size: usize) -> Result<Ideal, IdealError> {
    if size > m.rows.min(m.cols) {
        return Err(IdealError::MinorSize {
            size,
            rows: m.rows,
            cols: m.cols,
        });
    }
    if size == 0 {
        return Ok(Ideal::unit(m.ring));
    }
    let mut gens = Vec::new();
    for rows in subsets(m.rows, size) {
        for cols in subsets(m.cols, size) {
            gens.push(m.minor(&rows, &cols));
        }
    }
    Ok(Ideal::new(m.ring, gens))
}
