#![allow(dead_code)]

use morphinject::grammar::Gender;
use morphinject::noun::Countability;
use morphinject::NounClass;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const CONSONANTS: &[&str] = &[
    "क", "ख", "ग", "घ", "च", "ज", "ट", "ड", "त", "द", "न", "प", "ब", "म", "र", "ल", "स", "ह",
];
const MEDIAL: &[&str] = &["", "", "ा", "ि", "ु", "े", "ो"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ending {
    Aa,
    Ii,
    Uu,
    Consonant,
    Iya,
}

/// A random root body of 1 to 3 syllables followed by `ending`.
pub fn synth_root(rng: &mut impl Rng, ending: Ending) -> String {
    let mut root = String::new();
    let syllables = rng.random_range(1..=3);
    for _ in 0..syllables {
        root.push_str(CONSONANTS.choose(rng).unwrap());
        root.push_str(MEDIAL.choose(rng).unwrap());
    }
    root.push_str(CONSONANTS.choose(rng).unwrap());
    root.push_str(match ending {
        Ending::Aa => "ा",
        Ending::Ii => "ी",
        Ending::Uu => "ू",
        Ending::Consonant => "",
        Ending::Iya => "िया",
    });
    root
}

#[derive(Clone, Debug)]
pub struct SynthNoun {
    pub lemma: String,
    pub root: String,
    pub gender: Gender,
    pub countability: Countability,
    pub class: NounClass,
}

/// A noun whose gender, countability and ending make it belong to
/// `class`.
pub fn synth_noun(rng: &mut impl Rng, lemma: String, class: NounClass) -> SynthNoun {
    use Ending::*;
    let pick = |rng: &mut dyn rand::RngCore, options: &[Ending]| options[rng.random_range(0..options.len())];
    let (gender, countability, ending) = match class {
        NounClass::A => {
            let gender = if rng.random_bool(0.5) { Gender::Masculine } else { Gender::Feminine };
            (gender, Countability::Mass, pick(rng, &[Aa, Ii, Uu, Consonant]))
        }
        NounClass::B => (Gender::Feminine, Countability::Countable, pick(rng, &[Ii, Ii, Iya])),
        NounClass::C => (Gender::Feminine, Countability::Countable, pick(rng, &[Consonant, Aa, Uu])),
        NounClass::D => (Gender::Masculine, Countability::Countable, Aa),
        NounClass::E => (Gender::Masculine, Countability::Countable, pick(rng, &[Uu, Ii, Consonant])),
    };
    SynthNoun {
        lemma,
        root: synth_root(rng, ending),
        gender,
        countability,
        class,
    }
}

pub fn random_class(rng: &mut impl Rng) -> NounClass {
    NounClass::ALL[rng.random_range(0..5)]
}
