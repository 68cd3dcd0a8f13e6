//! Grammatical feature values shared by the noun, verb and extraction modules.
//!
//! Every value renders as the lowercase factor string used in factored
//! corpora (`plural`, `oblique`, `third`, ...).

use std::fmt;
use std::str::FromStr;

macro_rules! factor_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal $(| $alias:literal)*),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s.to_ascii_lowercase().as_str() {
                    $($text $(| $alias)* => Ok($name::$variant),)+
                    _ => Err(format!(
                        concat!("unknown ", stringify!($name), " value `{}`"),
                        s
                    )),
                }
            }
        }
    };
}

factor_enum!(Number {
    Singular => "singular" | "sg",
    Plural => "plural" | "pl",
});

factor_enum!(Case {
    Direct => "direct" | "dir",
    Oblique => "oblique" | "obl",
});

factor_enum!(
    /// Lexical gender of a target-language noun, or the gender variant of a
    /// verb suffix.
    Gender {
        Masculine => "masculine" | "m" | "masc",
        Feminine => "feminine" | "f" | "fem",
    }
);

factor_enum!(Person {
    First => "first" | "1",
    Second => "second" | "2",
    Third => "third" | "3",
});

factor_enum!(Tense {
    Present => "present",
    Past => "past",
    Future => "future",
});

factor_enum!(Aspect {
    Simple => "simple",
    Progressive => "progressive",
    Perfect => "perfect",
});
