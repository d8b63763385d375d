macro_rules! example {
    ($test:ident, $file:literal) => {
        #[test]
        fn $test() {
            #[allow(dead_code)]
            mod ex {
                include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
            }
            ex::run_example().expect($file);
        }
    };
}

example!(disk_maps, "disk_maps.rs");
example!(radial_family, "radial_family.rs");
example!(gluing, "gluing.rs");
example!(conjugation, "conjugation.rs");
example!(loewner_inversion, "loewner_inversion.rs");
example!(reverse_duality, "reverse_duality.rs");
example!(continuity_scan, "continuity_scan.rs");
example!(univalence, "univalence.rs");
example!(hamel_counterexample, "hamel_counterexample.rs");
example!(bound_audit, "bound_audit.rs");
example!(cli_session, "cli_session.rs");
