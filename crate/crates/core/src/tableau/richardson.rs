//! Richardson tableaux, their column-strip decomposition and the associated
//! pair of permutations.

use super::{evacuate, fill_syt_filtered, Partition, StandardTableau, TableauError};
use crate::perm::Permutation;

/// Whether every second-row entry `j` has `j - 1` in the first row, and the
/// same holds recursively for the cropped tableau.
pub fn is_richardson(t: &StandardTableau) -> bool {
    let mut cur = t.clone();
    while cur.rows().len() >= 2 {
        let first = &cur.rows()[0];
        if cur.rows()[1].iter().any(|&j| first.binary_search(&(j - 1)).is_err()) {
            return false;
        }
        cur = cur.crop();
    }
    true
}

/// All Richardson tableaux of the given shape, in the order produced by
/// filling `1, 2, …` into rows top to bottom.
///
/// Placing `j` in row `r + 1` is allowed only if the largest entry placed so
/// far in rows `r` and below lies in row `r`; this is the defining condition
/// applied to every crop at once.
pub fn generate_richardson(shape: &Partition) -> Vec<StandardTableau> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
    let mut allow = |rows: &[Vec<usize>], r: usize| {
        if r == 0 {
            return true;
        }
        let best = (r - 1..rows.len())
            .filter_map(|i| rows[i].last().map(|&v| (v, i)))
            .max();
        matches!(best, Some((_, i)) if i == r - 1)
    };
    fill_syt_filtered(shape.parts(), &mut rows, 1, &mut allow, &mut |rows| {
        out.push(StandardTableau::from_rows_unchecked(rows.to_vec()));
        true
    });
    out
}

/// The set partition of `1..=n` into the intervals `[a_i, a_{i+1})` cut out by
/// the first-row entries `a_1 < a_2 < …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnStripDecomposition {
    blocks: Vec<Vec<usize>>,
}

impl ColumnStripDecomposition {
    /// Blocks in increasing order of their least element, each sorted.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn minima(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| *b.last().expect("blocks are nonempty")).collect()
    }

    /// The decomposition obtained by relabelling `i ↦ n + 1 - i`.
    pub fn complement(&self, n: usize) -> Self {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&i| n + 1 - i).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        blocks.sort();
        Self { blocks }
    }
}

/// Splits a Richardson tableau into the column strips determined by its
/// first row.
///
/// Panics if some block is not a column strip, which cannot happen for a
/// Richardson tableau.
pub fn column_strip_decomposition(
    t: &StandardTableau,
) -> Result<ColumnStripDecomposition, TableauError> {
    if !is_richardson(t) {
        return Err(TableauError::NotRichardson);
    }
    let n = t.size();
    let Some(first) = t.rows().first() else {
        return Ok(ColumnStripDecomposition { blocks: Vec::new() });
    };
    let mut cuts = first.clone();
    cuts.push(n + 1);
    let blocks: Vec<Vec<usize>> = cuts.windows(2).map(|w| (w[0]..w[1]).collect()).collect();
    for block in &blocks {
        let mut rows: Vec<usize> =
            block.iter().map(|&v| t.cell_of(v).expect("entry present").0).collect();
        rows.sort_unstable();
        assert!(
            rows.windows(2).all(|w| w[0] != w[1]),
            "block {block:?} of a Richardson tableau is not a column strip:\n{t}"
        );
    }
    Ok(ColumnStripDecomposition { blocks })
}

/// `(v_T, w_T)`: `v_T^{-1}` is the top-down reading word of `evac(T)` and
/// `w_o w_T^{-1} w_o` is the reading word of `T`.
pub fn richardson_pair(t: &StandardTableau) -> (Permutation, Permutation) {
    let n = t.size();
    let v = evacuate(t).top_down_reading_word().inverse();
    let wo = Permutation::longest(n);
    let w = wo.compose(&t.reading_word().inverse()).compose(&wo);
    (v, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::{evacuation_paths, is_l_slide};

    fn t(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn example() -> StandardTableau {
        t(&[&[1, 2, 5, 7, 10], &[3, 8, 11], &[4, 9], &[6, 12]])
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn recognition() {
        assert!(is_richardson(&t(&[&[1, 2, 3]])));
        assert!(is_richardson(&StandardTableau::empty()));
        assert!(is_richardson(&example()));
        assert!(is_richardson(&evacuate(&example())));
        assert!(!is_richardson(&t(&[&[1, 2], &[3, 4]])));
    }

    #[test]
    fn worked_decomposition() {
        let d = column_strip_decomposition(&example()).unwrap();
        let want: Vec<Vec<usize>> =
            vec![vec![1], vec![2, 3, 4], vec![5, 6], vec![7, 8, 9], vec![10, 11, 12]];
        assert_eq!(d.blocks(), want.as_slice());
        let e = column_strip_decomposition(&evacuate(&example())).unwrap();
        assert_eq!(e, d.complement(12));
        let single = column_strip_decomposition(&t(&[&[1, 2, 3]])).unwrap();
        assert_eq!(single.blocks(), &[vec![1], vec![2], vec![3]]);
        assert_eq!(
            column_strip_decomposition(&t(&[&[1, 2], &[3, 4]])).unwrap_err(),
            TableauError::NotRichardson
        );
    }

    #[test]
    fn worked_pair() {
        let (v, w) = richardson_pair(&example());
        assert_eq!(v.values(), &[1, 6, 9, 2, 7, 11, 3, 8, 4, 10, 12, 5]);
        assert_eq!(w.values(), &[11, 6, 1, 9, 7, 2, 12, 3, 10, 8, 4, 5]);
        let (mut dv, mut dw) = (v, w);
        for _ in 0..5 {
            dv = dv.delta_remove();
            dw = dw.delta_remove();
        }
        assert_eq!(dv.values(), p("1426357").values());
        assert_eq!(dw.values(), p("6142753").values());
        assert_eq!(richardson_pair(&example().crop()), (dv, dw));
        assert_eq!(richardson_pair(&t(&[&[1]])), (p("1"), p("1")));
    }

    fn all_tableaux(max: usize) -> Vec<StandardTableau> {
        (0..=max)
            .flat_map(Partition::all_of_size)
            .flat_map(|shape| StandardTableau::all_of_shape(&shape))
            .collect()
    }

    #[test]
    fn generation_matches_filtering() {
        for n in 0..=8 {
            for shape in Partition::all_of_size(n) {
                let filtered: Vec<StandardTableau> = StandardTableau::all_of_shape(&shape)
                    .into_iter()
                    .filter(is_richardson)
                    .collect();
                let mut generated = generate_richardson(&shape);
                generated.sort();
                let mut filtered = filtered;
                filtered.sort();
                assert_eq!(generated, filtered, "shape {shape}");
            }
        }
        assert_eq!(generate_richardson(&Partition::new(vec![4]).unwrap()).len(), 1);
        assert_eq!(generate_richardson(&Partition::new(vec![1, 1, 1, 1]).unwrap()).len(), 1);
    }

    #[test]
    fn definition_matches_l_slides() {
        for s in all_tableaux(7) {
            let l = evacuation_paths(&s).iter().all(is_l_slide);
            assert_eq!(l, is_richardson(&s), "\n{s}");
        }
    }

    #[test]
    fn a_non_richardson_tableau_has_a_non_l_slide() {
        let shape = Partition::new(vec![2, 2, 1]).unwrap();
        let bad = StandardTableau::all_of_shape(&shape)
            .into_iter()
            .find(|s| !is_richardson(s))
            .expect("some SYT(2,2,1) is not Richardson");
        assert!(evacuation_paths(&bad).iter().any(|path| !is_l_slide(path)));
    }

    #[test]
    fn evacuation_and_crop_respect_richardson() {
        for s in all_tableaux(8) {
            let rich = is_richardson(&s);
            assert_eq!(rich, is_richardson(&evacuate(&s)));
            if rich {
                assert_eq!(evacuate(&s).crop(), evacuate(&s.crop()));
            }
        }
    }

    #[test]
    fn block_extremes_locate_small_values() {
        for s in all_tableaux(8).into_iter().filter(is_richardson) {
            if s.is_empty() {
                continue;
            }
            let k = s.rows()[0].len();
            let n = s.size();
            let d = column_strip_decomposition(&evacuate(&s)).unwrap();
            let (mins, maxs) = (d.minima(), d.maxima());
            let (v, w) = richardson_pair(&s);
            for i in 1..=k {
                assert_eq!(v.position_of(i), mins[i - 1]);
                assert_eq!(w.position_of(i), maxs[i - 1]);
            }
            assert!(v.descents().iter().all(|d| maxs[..k - 1].contains(d)));
            assert!(w.descents().iter().all(|d| !maxs.contains(d)));
            assert!(v.window() == n && w.window() == n);
        }
    }
}
