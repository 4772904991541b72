// hamlie: classify simple restricted modules of the p-envelope of H(2;(1,1);Phi(1)),
// print composition series, Witt restrictions and the acceptance checks.
#include <CLI11.hpp>

#include "hamlie/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Restricted simple modules of a Hamiltonian Lie algebra in characteristic p"};
    app.set_version_flag("--version", std::string(hamlie::kVersion));
    app.require_subcommand(1);

    hamlie::JobSpec job;
    long long p = 0;
    std::string weight;
    std::optional<std::string> cache_dir;
    auto common = [&](CLI::App* sub, bool with_weight) {
        sub->add_option("--p", p, "prime in [5, 97]")->required();
        if (with_weight) sub->add_option("--weight", weight, "lambda1,lambda2 (signed or canonical)")->required();
        sub->add_option("--format", job.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
        sub->add_option("--cache-dir", cache_dir, "module cache directory (default: $HAMLIE_CACHE_DIR)");
        sub->add_option("--seed", job.seed, "seed for randomized checks");
        sub->add_flag("--timings", job.timings, "report wall-clock times");
    };
    common(app.add_subcommand("classify", "catalog of simple classes"), false);
    common(app.add_subcommand("induce", "build and check Z(lambda)"), true);
    common(app.add_subcommand("factors", "composition series of Z(lambda)"), true);
    common(app.add_subcommand("restrict", "restriction of L(lambda) to W(1;1)"), true);
    common(app.add_subcommand("balanced", "eigenspaces of ad(y d_y - x d_x)"), false);
    common(app.add_subcommand("verify", "run all acceptance checks"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        job.command = app.get_subcommands().front()->get_name();
        if (p < 0 || p > 1000000) throw hamlie::UsageError("p must be a prime in [5, 97]");
        job.p = static_cast<hamlie::fp_t>(p);
        job.cache_dir = cache_dir;
        if (!weight.empty()) {
            if (job.p < 5 || !hamlie::is_prime(job.p)) throw hamlie::UsageError("p must be a prime in [5, 97]");
            job.weight = hamlie::parse_weight(weight, job.p);
        }
        hamlie::Report r = hamlie::run(job);
        std::cout << hamlie::render(r, job.format);
        return r.exit_code;
    } catch (const hamlie::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
