//! Transcribed themes by Beethoven, bundled as theme files.

use crate::music::theme::{parse_theme, AbstractTheme};

macro_rules! fixtures {
    ($($(#[$doc:meta])* $fn_name:ident => $file:literal;)*) => {
        /// `(name, theme file text)` for every bundled theme.
        pub const ALL: &[(&str, &str)] = &[
            $(($file, include_str!(concat!("../../fixtures/", $file, ".theme"))),)*
        ];

        $(
            $(#[$doc])*
            pub fn $fn_name() -> AbstractTheme {
                parse_theme(include_str!(concat!("../../fixtures/", $file, ".theme")))
                    .expect("bundled theme parses")
                    .with_name($file)
            }
        )*
    };
}

fixtures! {
    /// Fifth Symphony, first movement, opening motto.
    fifth_main => "fifth_main";
    /// The motto's second statement, a step lower.
    fifth_second_statement => "fifth_second_statement";
    /// A major rewrite of the motto that does not occur in the score.
    fifth_virtual_major => "fifth_virtual_major";
    /// The horn call of bars 59-62.
    fifth_horn_variant => "fifth_horn_variant";
    /// Sonata op. 10 no. 1, primary theme in C minor.
    op10n1_primary => "op10n1_primary";
    /// Sonata op. 10 no. 1, primary theme in C major.
    op10n1_major => "op10n1_major";
    ode_to_joy => "ode_to_joy";
    fur_elise => "fur_elise";
}

pub fn by_name(name: &str) -> Option<AbstractTheme> {
    ALL.iter().find(|(n, _)| *n == name).map(|(n, text)| {
        parse_theme(text)
            .expect("bundled theme parses")
            .with_name(*n)
    })
}
