fn main() {
    // Resolve BLAS/LAPACK symbols from OpenBLAS first when it is present;
    // the reference netlib libraries pulled in by the backend remain the fallback.
    if std::path::Path::new("/usr/lib/x86_64-linux-gnu/libopenblas.so").exists() {
        println!("cargo:rustc-link-lib=dylib=openblas");
    }
}
