//! Poset isomorphism by backtracking over invariant-compatible candidates.

use super::Poset;

/// Per-element invariant: (down-set size, up-set size). Any isomorphism
/// maps an element to one with the same pair.
fn signature(p: &Poset) -> Vec<(usize, usize)> {
    (0..p.len())
        .map(|i| (p.down_set(i).len(), p.up_set(i).len()))
        .collect()
}

/// `true` iff some bijection `phi` satisfies `x <= y` in `p` exactly when
/// `phi(x) <= phi(y)` in `q`. Identifiers are ignored.
pub fn are_isomorphic(p: &Poset, q: &Poset) -> bool {
    if p.len() != q.len() || p.strict_relation_count() != q.strict_relation_count() {
        return false;
    }
    let sp = signature(p);
    let sq = signature(q);
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return false;
    }

    // Map the most constrained elements first: rarest signature, then
    // elements with more comparabilities.
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| {
        let rarity = sp.iter().filter(|&&s| s == sp[i]).count();
        (rarity, usize::MAX - (sp[i].0 + sp[i].1), i)
    });

    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    extend(p, q, &sp, &sq, &order, 0, &mut image, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &Poset,
    q: &Poset,
    sp: &[(usize, usize)],
    sq: &[(usize, usize)],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in 0..q.len() {
        if used[y] || sq[y] != sp[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&z| {
            let w = image[z];
            p.leq(x, z) == q.leq(y, w) && p.leq(z, x) == q.leq(w, y)
        });
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if extend(p, q, sp, sq, order, depth + 1, image, used) {
            return true;
        }
        used[y] = false;
        image[x] = usize::MAX;
    }
    false
}
