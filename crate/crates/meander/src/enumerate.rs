//! Enumeration of Sturm permutations: a bounded brute force over permutations
//! fixing the endpoints, and an arch-based generator that assembles
//! noncrossing upper/lower systems and keeps the single-path completions.

use crate::open::is_sturm;
use crate::perm::Permutation;
use crate::MeanderError;

/// Default order bound for the factorial brute force.
pub const BRUTE_FORCE_BOUND: usize = 13;

/// Lexicographic successor in place; false once the sequence is descending.
pub(crate) fn next_permutation(vals: &mut [usize]) -> bool {
    if vals.len() < 2 {
        return false;
    }
    let mut i = vals.len() - 1;
    while i > 0 && vals[i - 1] >= vals[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = vals.len() - 1;
    while vals[j] <= vals[i - 1] {
        j -= 1;
    }
    vals.swap(i - 1, j);
    vals[i..].reverse();
    true
}

fn check_order(n: usize) -> Result<(), MeanderError> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(MeanderError::ParityViolation { n });
    }
    Ok(())
}

/// Reference enumeration: all of `S_n` fixing 1 and n, filtered by `is_sturm`,
/// in lexicographic order.
pub fn enumerate_sturm_brute_force(n: usize) -> Result<Vec<Permutation>, MeanderError> {
    enumerate_sturm_brute_force_bounded(n, BRUTE_FORCE_BOUND, 1)
}

/// Brute force with an explicit order bound and worker count.
///
/// Workers partition the search by the value at position 2; the merge
/// concatenates partitions in ascending order, so the output is identical
/// for every `jobs` value.
pub fn enumerate_sturm_brute_force_bounded(
    n: usize,
    bound: usize,
    jobs: usize,
) -> Result<Vec<Permutation>, MeanderError> {
    check_order(n)?;
    if n > bound {
        return Err(MeanderError::BoundExceeded { n, bound });
    }
    if n == 1 {
        return Ok(vec![Permutation::identity(1)]);
    }
    let jobs = jobs.max(1).min(n.saturating_sub(2).max(1));
    let prefixes: Vec<usize> = (2..n).collect();
    if jobs == 1 {
        let mut out = Vec::new();
        for &second in &prefixes {
            brute_force_with_prefix(n, second, &mut out);
        }
        return Ok(out);
    }
    let chunks: Vec<&[usize]> = prefixes.chunks(prefixes.len().div_ceil(jobs)).collect();
    let mut results: Vec<Vec<Permutation>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for &second in *chunk {
                        brute_force_with_prefix(n, second, &mut out);
                    }
                    out
                })
            })
            .collect();
        for h in handles {
            results.push(h.join().expect("enumeration worker panicked"));
        }
    });
    Ok(results.into_iter().flatten().collect())
}

fn brute_force_with_prefix(n: usize, second: usize, out: &mut Vec<Permutation>) {
    let mut rest: Vec<usize> = (2..n).filter(|&v| v != second).collect();
    loop {
        let mut image = Vec::with_capacity(n);
        image.push(1);
        image.push(second);
        image.extend_from_slice(&rest);
        image.push(n);
        let p = Permutation::from_image(image).expect("constructed image is a bijection");
        if is_sturm(&p) {
            out.push(p);
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

/// All noncrossing perfect matchings of the sorted vertex list.
fn noncrossing_matchings(vertices: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if vertices.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let first = vertices[0];
    // first pairs with an odd-offset partner, splitting the rest in two
    for k in (1..vertices.len()).step_by(2) {
        let partner = vertices[k];
        let inside = &vertices[1..k];
        let outside = &vertices[k + 1..];
        for inner in noncrossing_matchings(inside) {
            for outer in noncrossing_matchings(outside) {
                let mut matching = vec![(first, partner)];
                matching.extend_from_slice(&inner);
                matching.extend_from_slice(&outer);
                out.push(matching);
            }
        }
    }
    out
}

/// Arch-based enumeration: pairs every noncrossing upper system on
/// `1..n` with every noncrossing lower system on `2..=n`, keeps the pairs
/// whose alternating walk is a single road-covering path, and filters by the
/// Morse condition. No factorial bound.
pub fn enumerate_sturm(n: usize) -> Result<Vec<Permutation>, MeanderError> {
    check_order(n)?;
    if n == 1 {
        return Ok(vec![Permutation::identity(1)]);
    }
    let upper_vertices: Vec<usize> = (1..n).collect();
    let lower_vertices: Vec<usize> = (2..=n).collect();
    let uppers = noncrossing_matchings(&upper_vertices);
    let lowers = noncrossing_matchings(&lower_vertices);

    let mut out = Vec::new();
    let mut up = vec![0usize; n + 1];
    let mut lo = vec![0usize; n + 1];
    for upper in &uppers {
        up.iter_mut().for_each(|v| *v = 0);
        for &(a, b) in upper {
            up[a] = b;
            up[b] = a;
        }
        for lower in &lowers {
            lo.iter_mut().for_each(|v| *v = 0);
            for &(a, b) in lower {
                lo[a] = b;
                lo[b] = a;
            }
            if let Some(p) = walk_to_permutation(n, &up, &lo) {
                if p.morse_vector().is_nonnegative() {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Follows the alternating upper/lower walk from position 1; succeeds when it
/// visits every position once and terminates at position n.
fn walk_to_permutation(n: usize, up: &[usize], lo: &[usize]) -> Option<Permutation> {
    let mut image = vec![0usize; n]; // image[pos-1] = label
    let mut pos = 1usize;
    for label in 1..=n {
        if pos == 0 || image[pos - 1] != 0 {
            return None;
        }
        image[pos - 1] = label;
        if label == n {
            break;
        }
        pos = if label % 2 == 1 { up[pos] } else { lo[pos] };
    }
    if image[n - 1] != n || image.contains(&0) {
        return None;
    }
    Some(Permutation::from_image(image).expect("walk produces a bijection"))
}
