//! The automaton-to-substitution construction: the substitution over the
//! product automaton's state set whose fixed point, under the output coding,
//! is the automatic sequence. Images may be empty where the numeration
//! automaton is partial.

use num::bigint::BigInt;
use num::{One, Zero};

use super::SeqError;
use crate::automata::Dfao;

/// A substitution over letters `0..images.len()`, with a designated seed.
/// Images may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Vec<usize>>,
    seed: usize,
}

impl Substitution {
    pub fn new(images: Vec<Vec<usize>>, seed: usize) -> Result<Self, SeqError> {
        let n = images.len();
        if seed >= n || images.iter().flatten().any(|&l| l >= n) {
            return Err(SeqError::InvalidInput("letter out of range".into()));
        }
        Ok(Substitution { images, seed })
    }

    pub fn alphabet_len(&self) -> usize {
        self.images.len()
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    pub fn image(&self, letter: usize) -> &[usize] {
        &self.images[letter]
    }

    /// Prolongable at the seed: the seed's image starts with the seed and is
    /// longer than one letter.
    pub fn is_prolongable(&self) -> bool {
        let img = &self.images[self.seed];
        img.len() >= 2 && img[0] == self.seed
    }

    /// Uniform image length, if all images share one.
    pub fn uniform_length(&self) -> Option<usize> {
        let t = self.images.first()?.len();
        self.images.iter().all(|i| i.len() == t).then_some(t)
    }

    /// Letters whose images erase to nothing under iteration: the least set
    /// containing every letter all of whose image letters already erase.
    pub fn mortal_letters(&self) -> Vec<bool> {
        let n = self.images.len();
        let mut mortal = vec![false; n];
        loop {
            let mut changed = false;
            for l in 0..n {
                if !mortal[l] && self.images[l].iter().all(|&r| mortal[r]) {
                    mortal[l] = true;
                    changed = true;
                }
            }
            if !changed {
                return mortal;
            }
        }
    }

    /// Prefix of the one-sided fixed point at the seed, of the requested
    /// length (shorter only if the fixed point is finite).
    pub fn fixed_point(&self, length: usize) -> Result<Vec<usize>, SeqError> {
        if !self.is_prolongable() {
            return Err(SeqError::NotProlongable);
        }
        let mut word = vec![self.seed];
        loop {
            let mut next = Vec::with_capacity(length);
            'outer: for &l in &word {
                for &r in &self.images[l] {
                    next.push(r);
                    if next.len() >= length {
                        break 'outer;
                    }
                }
            }
            if next.len() >= length {
                next.truncate(length);
                return Ok(next);
            }
            if next == word {
                // The expansion stalled; the fixed point is finite.
                return Ok(next);
            }
            word = next;
        }
    }

    /// `|sigma^n(letter)|` by iterated length vectors.
    pub fn image_lengths(&self, letter: usize, n: usize) -> BigInt {
        let mut lens = vec![BigInt::one(); self.images.len()];
        for _ in 0..n {
            lens = self
                .images
                .iter()
                .map(|img| {
                    let mut acc = BigInt::zero();
                    for &r in img {
                        acc += &lens[r];
                    }
                    acc
                })
                .collect();
        }
        lens[letter].clone()
    }
}

/// Build the substitution of a product DFAO: the image of a state lists its
/// successors on digits `0, 1, ...` in order, skipping undefined transitions.
/// The coding is the output map. Requires the zero self-loop at the initial
/// state, which makes the substitution prolongable there.
pub fn automaton_to_substitution(
    product: &Dfao<u32>,
) -> Result<(Substitution, Vec<u32>), SeqError> {
    if !product.has_zero_loop(0) {
        return Err(SeqError::NotProlongable);
    }
    let images = (0..product.num_states())
        .map(|q| {
            product
                .alphabet()
                .iter()
                .filter_map(|&a| product.step(q, a))
                .collect()
        })
        .collect();
    let coding = (0..product.num_states()).map(|q| product.output(q)).collect();
    let sub = Substitution::new(images, product.initial())?;
    if !sub.is_prolongable() {
        return Err(SeqError::NotProlongable);
    }
    Ok((sub, coding))
}

/// Letter-wise image under a uniform substitution given as images over the
/// output alphabet.
pub fn apply_uniform_substitution(
    prefix: &[u32],
    images: &[Vec<u32>],
) -> Result<Vec<u32>, SeqError> {
    let t = images.first().map(|i| i.len()).unwrap_or(0);
    if t == 0 || images.iter().any(|i| i.len() != t) {
        return Err(SeqError::NotUniform);
    }
    let mut out = Vec::with_capacity(prefix.len() * t);
    for &x in prefix {
        let img = images
            .get(x as usize)
            .ok_or_else(|| SeqError::InvalidInput(format!("letter {x} has no image")))?;
        out.extend_from_slice(img);
    }
    Ok(out)
}

/// Keep indices congruent to 0 modulo `t`.
pub fn periodic_deletion(prefix: &[u32], t: usize) -> Result<Vec<u32>, SeqError> {
    if t == 0 {
        return Err(SeqError::InvalidInput("deletion step must be positive".into()));
    }
    Ok(prefix.iter().step_by(t).copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_sub() -> Substitution {
        // a -> aaab, b -> b.
        Substitution::new(vec![vec![0, 0, 0, 1], vec![1]], 0).unwrap()
    }

    #[test]
    fn figure1_fixed_point() {
        let s = fig1_sub();
        assert!(s.is_prolongable());
        let fp = s.fixed_point(12).unwrap();
        assert_eq!(fp, vec![0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn fibonacci_substitution_fixed_point() {
        // a -> ab, b -> a.
        let s = Substitution::new(vec![vec![0, 1], vec![0]], 0).unwrap();
        let fp = s.fixed_point(13).unwrap();
        assert_eq!(fp, vec![0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn image_length_examples() {
        let s = Substitution::new(vec![vec![0, 0]], 0).unwrap();
        for n in 0..12u32 {
            assert_eq!(s.image_lengths(0, n as usize), BigInt::from(2u64.pow(n)));
        }
        let fig = fig1_sub();
        // |sigma^n(a)| = 3|sigma^{n-1}(a)| + 1.
        assert_eq!(fig.image_lengths(0, 3), BigInt::from(40));
        assert_eq!(fig.image_lengths(1, 5), BigInt::one());
    }

    #[test]
    fn uniform_application_and_deletion() {
        let prefix = vec![0, 1, 0, 0, 1];
        let mu = vec![vec![0, 0, 0, 0], vec![1, 0, 0, 0]];
        let image = apply_uniform_substitution(&prefix, &mu).unwrap();
        assert_eq!(image.len(), 20);
        assert_eq!(&image[..8], &[0, 0, 0, 0, 1, 0, 0, 0]);
        assert!(matches!(
            apply_uniform_substitution(&prefix, &[vec![0], vec![1, 1]]),
            Err(SeqError::NotUniform)
        ));
        assert_eq!(periodic_deletion(&prefix, 1).unwrap(), prefix);
        assert_eq!(periodic_deletion(&prefix, 2).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn empty_images_are_supported() {
        // b erases, so the fixed point of a -> ab stalls at the finite word ab.
        let s = Substitution::new(vec![vec![0, 1], vec![]], 0).unwrap();
        let fp = s.fixed_point(6).unwrap();
        assert_eq!(fp, vec![0, 1]);
        assert_eq!(s.mortal_letters(), vec![false, true]);
        // A looping letter never erases.
        let looped = Substitution::new(vec![vec![0, 0]], 0).unwrap();
        assert_eq!(looped.mortal_letters(), vec![false]);
    }
}
