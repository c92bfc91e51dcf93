fn main() {
    std::process::exit(isobaric_mf::cli::run());
}
