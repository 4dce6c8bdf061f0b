//! Jeu-de-taquin evacuation with hole-path tracking.

use super::{StandardTableau, TableauError};

/// Cells visited by the hole during one evacuation slide, starting at `(1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HolePath {
    cells: Vec<(usize, usize)>,
}

impl HolePath {
    pub fn new(cells: Vec<(usize, usize)>) -> Self {
        debug_assert!(cells.windows(2).all(|w| {
            let (a, b) = (w[0], w[1]);
            (b.0 == a.0 + 1 && b.1 == a.1) || (b.0 == a.0 && b.1 == a.1 + 1)
        }));
        Self { cells }
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    /// The cell where the hole stopped.
    pub fn end(&self) -> Option<(usize, usize)> {
        self.cells.last().copied()
    }

    /// Step directions, `true` for a down-step and `false` for a right-step.
    pub fn steps(&self) -> Vec<bool> {
        self.cells.windows(2).map(|w| w[1].0 > w[0].0).collect()
    }
}

/// Whether the path is L-shaped: some down-steps followed by some
/// right-steps (either run may be empty).
pub fn is_l_slide(path: &HolePath) -> bool {
    let steps = path.steps();
    !steps.windows(2).any(|w| !w[0] && w[1])
}

/// One evacuation slide: removes the entry at `(1, 1)`, decrements the rest and
/// slides the hole out to a corner. Returns the smaller tableau, the vacated
/// corner and the hole's path.
pub fn evacuation_slide(
    t: &StandardTableau,
) -> Result<(StandardTableau, (usize, usize), HolePath), TableauError> {
    if t.is_empty() {
        return Err(TableauError::Empty);
    }
    let mut grid: Vec<Vec<usize>> =
        t.rows().iter().map(|row| row.iter().map(|&v| v - 1).collect()).collect();
    let (mut r, mut c) = (0usize, 0usize);
    let mut cells = vec![(1, 1)];
    loop {
        let right = grid[r].get(c + 1).copied();
        let below = grid.get(r + 1).and_then(|row| row.get(c)).copied();
        let down = match (right, below) {
            (None, None) => break,
            (Some(_), None) => false,
            (None, Some(_)) => true,
            (Some(x), Some(y)) => {
                assert_ne!(x, y, "tableau entries are distinct");
                y < x
            }
        };
        let (nr, nc) = if down { (r + 1, c) } else { (r, c + 1) };
        grid[r][c] = grid[nr][nc];
        r = nr;
        c = nc;
        cells.push((r + 1, c + 1));
    }
    debug_assert_eq!(c + 1, grid[r].len());
    grid[r].pop();
    if grid[r].is_empty() {
        grid.pop();
    }
    Ok((StandardTableau::from_rows_unchecked(grid), (r + 1, c + 1), HolePath::new(cells)))
}

/// The hole path of every slide performed while evacuating `t`, in order.
pub fn evacuation_paths(t: &StandardTableau) -> Vec<HolePath> {
    let mut cur = t.clone();
    let mut paths = Vec::with_capacity(t.size());
    while !cur.is_empty() {
        let (next, _, path) = evacuation_slide(&cur).expect("nonempty");
        paths.push(path);
        cur = next;
    }
    paths
}

/// Schützenberger's evacuation: the `k`-th slide vacates the corner that
/// receives `n - k + 1`.
pub fn evacuate(t: &StandardTableau) -> StandardTableau {
    let n = t.size();
    let mut out: Vec<Vec<usize>> = t.rows().iter().map(|row| vec![0; row.len()]).collect();
    let mut cur = t.clone();
    for k in 1..=n {
        let (next, (r, c), _) = evacuation_slide(&cur).expect("nonempty");
        out[r - 1][c - 1] = n - k + 1;
        cur = next;
    }
    StandardTableau::from_rows_unchecked(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::Partition;

    fn t(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_box() {
        let (rest, corner, path) = evacuation_slide(&t(&[&[1]])).unwrap();
        assert!(rest.is_empty());
        assert_eq!(corner, (1, 1));
        assert_eq!(path.cells(), &[(1, 1)]);
        assert!(is_l_slide(&path));
        assert!(evacuation_slide(&StandardTableau::empty()).is_err());
    }

    #[test]
    fn worked_evacuation() {
        let src = t(&[&[1, 2, 5, 7, 10], &[3, 8, 11], &[4, 9], &[6, 12]]);
        let want = t(&[&[1, 4, 7, 9, 12], &[2, 5, 8], &[3, 10], &[6, 11]]);
        assert_eq!(evacuate(&src), want);
        assert_eq!(evacuate(&want), src);
        assert_eq!(
            evacuate(&src).top_down_reading_word().values(),
            &[1, 4, 7, 9, 12, 2, 5, 8, 3, 10, 6, 11]
        );
    }

    #[test]
    fn first_slides_of_richardson_example() {
        let src = t(&[&[1, 4, 7, 9, 12], &[2, 5, 8], &[3, 10], &[6, 11]]);
        let (s1, c1, p1) = evacuation_slide(&src).unwrap();
        assert_eq!(s1, t(&[&[1, 3, 6, 8, 11], &[2, 4, 7], &[5, 9], &[10]]));
        assert_eq!(c1, (4, 2));
        assert_eq!(p1.cells(), &[(1, 1), (2, 1), (3, 1), (4, 1), (4, 2)]);
        let (s2, c2, _) = evacuation_slide(&s1).unwrap();
        assert_eq!(s2, t(&[&[1, 2, 5, 7, 10], &[3, 6], &[4, 8], &[9]]));
        assert_eq!(c2, (2, 3));
        let (s3, c3, _) = evacuation_slide(&s2).unwrap();
        assert_eq!(s3, t(&[&[1, 4, 6, 9], &[2, 5], &[3, 7], &[8]]));
        assert_eq!(c3, (1, 5));
        assert!(c1.0 > c2.0 && c2.0 > c3.0 && c3.0 == 1);
    }

    #[test]
    fn l_slide_shapes() {
        assert!(is_l_slide(&HolePath::new(vec![(1, 1)])));
        assert!(is_l_slide(&HolePath::new(vec![(1, 1), (2, 1), (3, 1), (3, 2)])));
        assert!(is_l_slide(&HolePath::new(vec![(1, 1), (1, 2), (1, 3)])));
        assert!(!is_l_slide(&HolePath::new(vec![(1, 1), (1, 2), (2, 2), (3, 2)])));
        assert!(!is_l_slide(&HolePath::new(vec![(1, 1), (2, 1), (2, 2), (3, 2)])));
    }

    #[test]
    fn evacuation_is_an_involution_on_small_shapes() {
        for n in 0..=6 {
            for shape in Partition::all_of_size(n) {
                for s in StandardTableau::all_of_shape(&shape) {
                    let e = evacuate(&s);
                    assert_eq!(e.shape(), shape);
                    assert_eq!(evacuate(&e), s);
                }
            }
        }
        assert_eq!(evacuate(&t(&[&[1, 2, 3]])), t(&[&[1, 2, 3]]));
    }
}
