//! Random tree generation for population seeding and subtree mutation.

use super::{Expr, Primitive, CONSTANT_POOL_MAX};
use rand::Rng;

/// How a random tree is shaped against its target depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeMethod {
    /// Every branch reaches exactly the target depth.
    Full,
    /// Below the root, each node short of the target depth is a primitive
    /// with probability `(|primitives| + 1) / (|primitives| + |variables|)`,
    /// so branches may stop early when several variables are in play.
    Grow,
}

/// Draws a random leaf. The terminal kinds — each of the `width` variables
/// and "a constant" — are equally likely; a constant then instantiates
/// uniformly from `0..=CONSTANT_POOL_MAX`. Weighting kinds rather than pool
/// elements keeps random trees variable-rich even though the constant pool
/// outnumbers the variables.
pub fn random_leaf<R: Rng + ?Sized>(width: usize, rng: &mut R) -> Expr {
    let k = rng.gen_range(0..width + 1);
    if k < width {
        Expr::Var(k)
    } else {
        Expr::Const(rng.gen_range(0..=CONSTANT_POOL_MAX))
    }
}

/// Generates a random tree over `width` variables.
///
/// The target depth — counted in edges, so a bare leaf has depth 0 — is
/// drawn uniformly from `depth_range` (inclusive), then the tree is built by
/// `method`. Whenever the target depth allows, the root is always a
/// primitive so no whole program degenerates to a bare leaf.
pub fn random_tree<R: Rng + ?Sized>(
    width: usize,
    depth_range: (usize, usize),
    method: TreeMethod,
    rng: &mut R,
) -> Expr {
    let (lo, hi) = depth_range;
    assert!(width >= 1, "at least one variable is required");
    assert!(lo <= hi, "invalid depth range {lo}..={hi}");
    let target = rng.gen_range(lo..=hi);
    build(width, target + 1, method, true, rng)
}

fn build<R: Rng + ?Sized>(
    width: usize,
    remaining: usize,
    method: TreeMethod,
    is_root: bool,
    rng: &mut R,
) -> Expr {
    let internal = remaining > 1
        && (is_root
            || match method {
                TreeMethod::Full => true,
                TreeMethod::Grow => {
                    rng.gen_range(0..Primitive::ALL.len() + width) <= Primitive::ALL.len()
                }
            });
    if !internal {
        return random_leaf(width, rng);
    }
    let prim = Primitive::ALL[rng.gen_range(0..Primitive::ALL.len())];
    let children = (0..prim.arity())
        .map(|_| build(width, remaining - 1, method, false, rng))
        .collect();
    Expr::Prim(prim, children)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn full_trees_hit_the_target_depth() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for depth in 0..=6 {
            for _ in 0..50 {
                let tree = random_tree(2, (depth, depth), TreeMethod::Full, &mut rng);
                assert_eq!(tree.depth(), depth);
            }
        }
    }

    #[test]
    fn grow_trees_stay_within_the_target_depth() {
        // A wide variable set makes the early-terminal branch likely.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut shallower = 0;
        for _ in 0..200 {
            let tree = random_tree(8, (6, 6), TreeMethod::Grow, &mut rng);
            assert!(tree.depth() <= 6);
            if tree.depth() < 6 {
                shallower += 1;
            }
        }
        assert!(shallower > 0, "grow should sometimes stop early");
    }

    #[test]
    fn leaves_stay_in_bounds() {
        fn check(expr: &Expr) {
            match expr {
                Expr::Var(i) => assert!(*i < 3),
                Expr::Const(c) => assert!((0..=CONSTANT_POOL_MAX).contains(c)),
                Expr::Prim(p, children) => {
                    assert_eq!(children.len(), p.arity());
                    children.iter().for_each(check);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            check(&random_tree(3, (2, 6), TreeMethod::Grow, &mut rng));
        }
    }

    #[test]
    fn every_primitive_is_reachable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..300 {
            let tree = random_tree(1, (5, 6), TreeMethod::Full, &mut rng);
            for prim in Primitive::ALL {
                if tree.contains_primitive(prim) {
                    seen.insert(prim);
                }
            }
        }
        assert_eq!(seen.len(), Primitive::ALL.len());
    }

    #[test]
    fn generation_is_deterministic() {
        let make = || {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            (0..20)
                .map(|_| random_tree(2, (2, 6), TreeMethod::Grow, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(make(), make());
    }
}
