use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = branchix_cli::args::Cli::parse();
    let code = branchix_cli::run(cli, &mut std::io::stdout().lock());
    std::process::exit(code);
}
