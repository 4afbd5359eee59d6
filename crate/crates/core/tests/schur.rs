use hecke_core::giambelli::{schur_dim, Partition};
use num_bigint::BigInt;

/// Counts semistandard tableaux of shape `shape` with entries in `1..=n`, cell by cell in row order.
fn count_ssyt(shape: &[u32], n: u32) -> u64 {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0u32; shape.first().copied().unwrap_or(0) as usize]; shape.len()];
    fn go(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, n: u32) -> u64 {
        let Some(&(r, c)) = cells.get(idx) else {
            return 1;
        };
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(grid[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(grid[r - 1][c] + 1);
        }
        let mut total = 0;
        for v in lo..=n {
            grid[r][c] = v;
            total += go(idx + 1, cells, grid, n);
        }
        total
    }
    go(0, &cells, &mut grid, n)
}

#[test]
fn hook_content_matches_enumeration() {
    let mut shapes = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=a {
            for c in 0..=b {
                shapes.push(vec![a, b, c]);
            }
        }
    }
    for shape in shapes {
        let parts: Vec<u32> = shape.iter().copied().filter(|&x| x > 0).collect();
        let lambda = Partition::new(parts.clone()).unwrap();
        for n in 1..=4u32 {
            if (parts.len() as u32) > n {
                assert!(schur_dim(&lambda, n).is_err());
                continue;
            }
            assert_eq!(
                schur_dim(&lambda, n).unwrap(),
                BigInt::from(count_ssyt(&parts, n)),
                "shape {parts:?}, n = {n}"
            );
        }
    }
}
