/// FNV-1a over the canonical text form; stable across runs and platforms.
pub fn fnv1a(text: &str) -> String {
    let mut hash = 0xcbf29ce484222325u64;
    for b in text.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_reference_values() {
        assert_eq!(fnv1a(""), "cbf29ce484222325");
        assert_eq!(fnv1a("matrix 1 1\n0\n"), fnv1a("matrix 1 1\n0\n"));
        assert_ne!(fnv1a("a"), fnv1a("b"));
    }
}
