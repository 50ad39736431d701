//! Homomorphisms between presented groups, enumerated by generator images.
//!
//! A choice of images `t_j` for the generators extends to a homomorphism iff
//! it satisfies every defining relation of the source presentation: the
//! power relations `t_j * m_j = f(P_j)` and the commutator relations
//! `[t_i, t_j] = f(w_ij)`. Relations are checked as soon as all generators
//! they mention have images, which prunes the product of choices early.

use std::ops::ControlFlow;

use super::GroupTable;

struct Relation {
    level: usize,
    kind: RelationKind,
}

enum RelationKind {
    Power { j: usize, m: u64, word: Vec<u32> },
    Commutator { i: usize, j: usize, word: Vec<u32> },
}

fn support_max(word: &[u32]) -> Option<usize> {
    word.iter().rposition(|&c| c != 0)
}

fn relations(src: &GroupTable) -> Vec<Relation> {
    let spec = src.spec();
    let k = spec.rank();
    let mut rels = Vec::new();
    for j in 0..k {
        let word = spec
            .power_table
            .get(j)
            .cloned()
            .unwrap_or_else(|| vec![0; k]);
        let level = support_max(&word).map_or(j, |s| s.max(j));
        rels.push(Relation {
            level,
            kind: RelationKind::Power {
                j,
                m: spec.gen_orders[j] as u64,
                word,
            },
        });
    }
    for j in 1..k {
        for i in 0..j {
            let word = spec.relation(i, j).to_vec();
            let level = support_max(&word).map_or(j, |s| s.max(j));
            rels.push(Relation {
                level,
                kind: RelationKind::Commutator { i, j, word },
            });
        }
    }
    rels
}

/// Evaluates the normal-form word `word` under generator images `imgs`.
fn eval_word(dst: &GroupTable, imgs: &[usize], word: &[u32]) -> usize {
    let mut acc = 0;
    for (l, &c) in word.iter().enumerate() {
        if c != 0 {
            acc = dst.add(acc, dst.scalar(imgs[l], c as u64));
        }
    }
    acc
}

fn holds(dst: &GroupTable, imgs: &[usize], rel: &Relation) -> bool {
    match &rel.kind {
        RelationKind::Power { j, m, word } => dst.scalar(imgs[*j], *m) == eval_word(dst, imgs, word),
        RelationKind::Commutator { i, j, word } => {
            dst.commutator(imgs[*i], imgs[*j]) == eval_word(dst, imgs, word)
        }
    }
}

/// Full image vector of the homomorphism with generator images `imgs`.
pub fn extend(src: &GroupTable, dst: &GroupTable, imgs: &[usize]) -> Vec<u16> {
    let k = src.spec().rank();
    let multiples: Vec<Vec<usize>> = (0..k)
        .map(|j| {
            let m = src.spec().gen_orders[j] as usize;
            let mut v = Vec::with_capacity(m);
            let mut acc = 0;
            for _ in 0..m {
                v.push(acc);
                acc = dst.add(acc, imgs[j]);
            }
            v
        })
        .collect();
    (0..src.order())
        .map(|x| {
            let c = src.coords(x);
            let mut acc = 0;
            for j in 0..k {
                if c[j] != 0 {
                    acc = dst.add(acc, multiples[j][c[j] as usize]);
                }
            }
            acc as u16
        })
        .collect()
}

/// Calls `visit(generator_images, full_images)` for every homomorphism
/// `src -> dst` whose generator images pass `allowed(j, image)`, in
/// lexicographic order of generator images. Stops early on `Break`.
pub fn for_each_hom<A, V>(src: &GroupTable, dst: &GroupTable, allowed: A, mut visit: V)
where
    A: Fn(usize, usize) -> bool,
    V: FnMut(&[usize], &[u16]) -> ControlFlow<()>,
{
    let k = src.spec().rank();
    let rels = relations(src);
    let mut by_level: Vec<Vec<&Relation>> = (0..k).map(|_| Vec::new()).collect();
    for r in &rels {
        by_level[r.level].push(r);
    }
    let choices: Vec<Vec<usize>> = (0..k)
        .map(|j| (0..dst.order()).filter(|&t| allowed(j, t)).collect())
        .collect();
    let mut imgs = vec![0usize; k];
    let mut pos = vec![0usize; k];
    let mut level = 0usize;
    loop {
        if pos[level] >= choices[level].len() {
            if level == 0 {
                return;
            }
            pos[level] = 0;
            level -= 1;
            pos[level] += 1;
            continue;
        }
        imgs[level] = choices[level][pos[level]];
        if by_level[level].iter().all(|r| holds(dst, &imgs, r)) {
            if level + 1 == k {
                let full = extend(src, dst, &imgs);
                if visit(&imgs, &full).is_break() {
                    return;
                }
            } else {
                level += 1;
                continue;
            }
        }
        pos[level] += 1;
    }
}
