//! Every runnable example also runs as a test.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " runs"));
        }
    };
}

example!(algebra_basics, "algebra_basics.rs");
example!(hilbert_module, "hilbert_module.rs");
example!(verify_bounds, "verify_bounds.rs");
example!(dual_and_parseval, "dual_and_parseval.rs");
example!(composition, "composition.rs");
example!(transport, "transport.rs");
example!(tensor_product, "tensor_product.rs");
example!(star_frame, "star_frame.rs");
example!(documents, "documents.rs");
