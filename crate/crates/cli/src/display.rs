//! Text rendering with display names.

use reeskit_core::polyring::Polynomial;
use reeskit_core::verifier::Target;

use crate::export::rename_tokens;

/// `T_2_1_0` becomes `T_{2,1,0}`; other names are kept.
pub fn display_token(token: &str) -> Option<String> {
    let rest = token.strip_prefix("T_")?;
    if rest.split('_').all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit())) {
        Some(format!("T_{{{}}}", rest.replace('_', ",")))
    } else {
        None
    }
}

pub fn display_poly(p: &Polynomial) -> String {
    rename_tokens(&p.to_string(), &display_token)
}

pub fn target_line(target: &Target) -> String {
    rename_tokens(&target.to_string(), &display_token)
}

pub fn rename_summary(line: &str) -> String {
    rename_tokens(line, &display_token)
}
