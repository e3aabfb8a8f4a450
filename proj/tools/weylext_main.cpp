// weylext — batch CLI over the scenario runners.
//
//   weylext <subcommand> [--config <path>] [--out <dir>] [--seed <u64>] [--jobs <n>]
//
// Subcommands: ho-spectrum, landau, bopp, covariance, intertwine-check,
// shubin, witness. Without --config the built-in defaults run; config keys
// override defaults individually. WEYLEXT_OUT overrides --out. Exit codes:
// 0 all checks passed, 1 a tolerance failed, 2 usage or config error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "weylext/scenarios.hpp"

int main(int argc, char** argv) {
    CLI::App app{"symplectic dimensional extensions of Weyl operators: verification scenarios"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "weylext-out";
    unsigned long seed = 0;
    int jobs = 1;

    const std::vector<std::string> names = {"ho-spectrum", "landau",  "bopp",   "covariance",
                                            "intertwine-check", "shubin", "witness"};
    for (const auto& n : names) app.add_subcommand(n)->fallthrough();
    app.add_option("--config", config_path, "JSON config file; keys override scenario defaults");
    app.add_option("--out", out_dir, "output directory for JSON/CSV reports");
    app.add_option("--seed", seed, "seed for randomized checks and samplers");
    app.add_option("--jobs", jobs, "reserved; scenarios run sequentially")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (const char* env_out = std::getenv("WEYLEXT_OUT")) out_dir = env_out;

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        weylext::scenarios::json config = weylext::scenarios::default_config(name);
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "weylext: cannot open config " << config_path << "\n";
                return 2;
            }
            weylext::scenarios::json user;
            try {
                f >> user;
            } catch (const std::exception& e) {
                std::cerr << "weylext: config parse error: " << e.what() << "\n";
                return 2;
            }
            for (auto& [k, v] : user.items()) config[k] = v;
        }
        const auto result = weylext::scenarios::run_scenario(name, config, seed);
        const std::string path = weylext::scenarios::write_outputs(result, name, out_dir);
        std::cout << result.report["checks"].dump(2) << "\n";
        std::cout << (result.exit_code == 0 ? "PASS" : "FAIL") << "  report: " << path << "\n";
        return result.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "weylext: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "weylext: error: " << e.what() << "\n";
        return 1;
    }
}
