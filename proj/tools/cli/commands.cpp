#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "mps/bounds.hpp"
#include "mps/builder.hpp"
#include "mps/certificate.hpp"

namespace mps::cli {
namespace {

PartialSpread ladder_seed(const Geometry& geo) {
    const Geometry pg4 = Geometry::make(geo.q(), 4, Geometry::LineStorage::streamed);
    return embed_in_hyperplane(geo, algebraic_pg4_mps(pg4));
}

std::string coords_text(const Geometry& geo, PointId p) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (Elem x : geo.coords(p)) {
        if (!first) os << ',';
        os << static_cast<int>(x);
        first = false;
    }
    os << ')';
    return os.str();
}

std::string line_text(const Geometry& geo, const Line& l) {
    const auto [a, b] = l.basis();
    return coords_text(geo, a) + " " + coords_text(geo, b);
}

// Writes, re-reads and re-verifies a certificate from its text alone.
VerifyReport self_check(const Geometry& geo, const Certificate& cert, std::string& text) {
    text = certificate_text(geo, cert);
    std::istringstream is(text);
    return verify_certificate(geo, parse_certificate(is));
}

bool write_text(const std::string& path, const std::string& text, std::ostream& err) {
    if (path.empty()) return true;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot write '" << path << "'\n";
        return false;
    }
    f << text;
    return static_cast<bool>(f);
}

}  // namespace

std::string bounds_row_text(const BoundsRow& b) {
    std::ostringstream os;
    os << b.min_size << " | δ≥" << b.delta_min << " | ≤" << b.max_size << " | " << b.upper_interval << " | "
       << b.spread_size;
    return os.str();
}

int cmd_construct(const ConstructOptions& opt, std::ostream& out, std::ostream& err) {
    if (!is_supported_order(opt.q)) {
        err << "error: unsupported q=" << opt.q << "\n";
        return kUsage;
    }
    const int kmax = n_max(opt.q);
    if (opt.k < 0 || opt.k > kmax) {
        err << "error: k=" << opt.k << " out of range 0.." << kmax << " (n_max(" << opt.q << ")=" << kmax
            << ")\nusage: mpsl construct --q Q --k K [--out FILE]\n";
        return kUsage;
    }
    const Geometry geo = Geometry::make(opt.q, 5);
    LadderOptions lo;
    if (opt.rng_seed) {
        lo.random_removal = true;
        lo.rng_seed = *opt.rng_seed;
    }
    // Each step is re-verified for small q; large hole sets make that slow.
    lo.verify_each_step = opt.q <= 5;
    const Certificate cert = build_ladder(geo, opt.k, ladder_seed(geo), lo);

    std::string text;
    const VerifyReport rep = self_check(geo, cert, text);
    if (rep.status != VerifyReport::Status::maximal) {
        err << "error: constructed spread failed verification: " << rep.message << "\n";
        return kInvalid;
    }
    if (!write_text(opt.out_path, text, err)) return kUsage;
    out << "constructed " << cert.provenance << " in PG(5," << opt.q << "): maximal, size " << rep.size
        << ", δ=" << rep.deficiency << "\n";
    return kOk;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
    CertificateFile file;
    VerifyReport rep;
    try {
        file = read_certificate_file(path);
        rep = verify_certificate(file);
    } catch (const CertificateError& e) {
        err << "invalid: " << e.what() << "\n";
        out << "invalid\n";
        return kInvalid;
    }
    switch (rep.status) {
    case VerifyReport::Status::maximal:
        out << "maximal, size " << rep.size << ", δ=" << rep.deficiency << "\n";
        return kOk;
    case VerifyReport::Status::extendable: {
        const Geometry geo = Geometry::make(file.q, file.n);
        out << "extendable, size " << rep.size << ", δ=" << rep.deficiency << "\n";
        out << "witness: " << line_text(geo, *rep.witness) << "\n";
        return kExtendable;
    }
    case VerifyReport::Status::invalid:
        if (rep.conflict)
            out << "invalid: skewness violation between records " << rep.conflict->first << " and "
                << rep.conflict->second << "\n";
        else
            out << "invalid: " << rep.message << "\n";
        return kInvalid;
    }
    return kInvalid;
}

int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
    if (!bounds_supported(opt.q)) {
        err << "error: unsupported q=" << opt.q << " (supported: 2, 3, 4, 5, 7)\n";
        return kUsage;
    }
    if (opt.jobs < 1) {
        err << "error: --jobs must be >= 1\n";
        return kUsage;
    }
    const BoundsRow b = bounds(opt.q);
    if (opt.target < b.min_size || opt.target > b.spread_size) {
        err << "refused: target " << opt.target << " outside [" << b.min_size << ", " << b.spread_size << "]\n";
        return kUsage;
    }
    if (size_excluded_by_bounds(opt.q, opt.target)) {
        err << "refused: target " << opt.target << " has δ=" << b.spread_size - opt.target
            << " < δ_min=" << b.delta_min << "\n";
        return kUsage;
    }

    const Geometry geo = Geometry::make(opt.q, 5);
    std::optional<Certificate> cert;

    if (opt.target == b.spread_size) {
        cert = make_certificate(desarguesian_spread(geo), "spread");
    } else {
        // Start from whichever ladder stage or random greedy spread is closest.
        std::vector<std::pair<PartialSpread, std::string>> starts;
        {
            const Hyperplane h = construction_hyperplane(geo);
            LadderState st = start_ladder(geo, h, ladder_seed(geo));
            starts.emplace_back(st.spread, "ladder-0");
            for (int k = 1; k <= n_max(opt.q); ++k) {
                ladder_step(st, *least_hyperplane_line(st), false);
                starts.emplace_back(st.spread, "ladder-" + std::to_string(k));
            }
            Rng rng(opt.rng_seed);
            PartialSpread g(geo);
            greedy_complete(g, rng);
            starts.emplace_back(std::move(g), "search");
        }
        auto dist = [&](std::size_t s) { return s > opt.target ? s - opt.target : opt.target - s; };
        std::size_t best = 0;
        for (std::size_t i = 1; i < starts.size(); ++i)
            if (dist(starts[i].first.size()) < dist(starts[best].first.size())) best = i;
        const PartialSpread& start = starts[best].first;

        if (start.size() == opt.target) {
            cert = make_certificate(start, starts[best].second);
        } else {
            SearchConfig cfg = SearchConfig::preset(opt.budget, opt.q);
            std::atomic<bool> stop{false};
            std::mutex mu;
            std::optional<std::pair<int, PartialSpread>> found;
            std::size_t best_size = start.size();
            auto worker = [&](int w) {
                SearchConfig c = cfg;
                c.rng_seed = opt.rng_seed + static_cast<std::uint64_t>(w) * 0x9e3779b97f4a7c15ull;
                c.cancel = &stop;
                SearchResult r = local_search_resize(start, opt.target, c);
                std::lock_guard lock(mu);
                if (r.success && !found) {
                    found.emplace(w, std::move(r.spread));
                    stop = true;
                } else if (dist(r.spread.size()) < dist(best_size)) {
                    best_size = r.spread.size();
                }
            };
            if (opt.jobs == 1) {
                worker(0);
            } else {
                std::vector<std::jthread> pool;
                for (int w = 0; w < opt.jobs; ++w) pool.emplace_back(worker, w);
            }
            if (!found) {
                out << "search failed: best size " << best_size << " (target " << opt.target << ")\n";
                return kSearchFailed;
            }
            const std::uint64_t seed = opt.rng_seed + static_cast<std::uint64_t>(found->first) * 0x9e3779b97f4a7c15ull;
            cert = make_certificate(found->second, "search", seed);
        }
    }

    std::string text;
    const VerifyReport rep = self_check(geo, *cert, text);
    if (rep.status != VerifyReport::Status::maximal || rep.size != opt.target) {
        err << "error: search result failed verification: " << rep.message << "\n";
        return kInvalid;
    }
    if (!write_text(opt.out_path, text, err)) return kUsage;
    out << "found " << cert->provenance << " spread in PG(5," << opt.q << "): maximal, size " << rep.size
        << ", δ=" << rep.deficiency << "\n";
    return kOk;
}

int cmd_spectrum(const SpectrumOptions& opt, std::ostream& out, std::ostream& err) {
    if (!bounds_supported(opt.q)) {
        err << "error: unsupported q=" << opt.q << "\n";
        return kUsage;
    }
    if (opt.jobs < 1) {
        err << "error: --jobs must be >= 1\n";
        return kUsage;
    }
    const Geometry geo = Geometry::make(opt.q, 5);
    SearchConfig cfg = SearchConfig::preset(opt.budget, opt.q);
    cfg.rng_seed = opt.rng_seed;
    const SpectrumReport rep = spectrum_scan(geo, cfg, opt.jobs);

    std::ostringstream csv;
    csv << "q,size,deficiency,source,provenance,seconds\n";
    out << "size | δ | source | seconds\n";
    for (const auto& [size, e] : rep.achieved) {
        const std::size_t delta = geo.counts().spread_size - size;
        out << size << " | " << delta << " | " << to_string(e.source) << " | " << std::fixed
            << std::setprecision(3) << e.seconds << "\n";
        csv << opt.q << ',' << size << ',' << delta << ',' << to_string(e.source) << ','
            << e.certificate.provenance << ',' << std::fixed << std::setprecision(3) << e.seconds << "\n";
    }
    out << "achieved " << rep.achieved.size() << " sizes; missed " << rep.missed.size()
        << "; excluded by bounds " << rep.excluded.size() << "\n";
    if (!rep.missed.empty()) {
        out << "missed:";
        for (auto s : rep.missed) out << ' ' << s;
        out << "\n";
    }

    if (!opt.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(opt.out_dir, ec);
        if (ec) {
            err << "error: cannot create '" << opt.out_dir << "': " << ec.message() << "\n";
            return kUsage;
        }
        for (const auto& [size, e] : rep.achieved) {
            const auto path = std::filesystem::path(opt.out_dir) /
                              ("pg5_q" + std::to_string(opt.q) + "_size" + std::to_string(size) + ".cert");
            if (!write_text(path.string(), certificate_text(geo, e.certificate), err)) return kUsage;
        }
        if (!write_text((std::filesystem::path(opt.out_dir) / "summary.csv").string(), csv.str(), err))
            return kUsage;
    }
    return kOk;
}

int cmd_bounds(std::optional<int> q, bool csv, std::ostream& out, std::ostream& err) {
    std::vector<BoundsRow> rows;
    if (q) {
        if (!bounds_supported(*q)) {
            err << "error: no bounds row for q=" << *q << " (supported: 2, 3, 4, 5, 7)\n";
            return kUsage;
        }
        rows.push_back(bounds(*q));
    } else {
        rows = bounds_table();
    }

    if (csv) {
        out << "q,min_size,delta_min,max_size,upper_interval,spread_size,epsilon,lower_interval_ln,"
               "modified_low_ln,modified_low_log2,ladder_k_max,search_k_max,largest_deficiency\n";
        for (const auto& b : rows) {
            out << b.q << ',' << b.min_size << ',' << b.delta_min << ',' << b.max_size << ',' << b.upper_interval
                << ',' << b.spread_size << ',' << b.epsilon << ',' << std::fixed << std::setprecision(2)
                << b.lower_interval << ',' << b.modified_low_ln << ',' << b.modified_low_log2 << ','
                << b.ladder_k_max << ',' << b.search_k_max << ',';
            if (b.largest_deficiency) out << *b.largest_deficiency;
            out << "\n";
        }
        return kOk;
    }

    out << "q | q^3+q^2+1 | δ | max size | spread-q+1 | spread\n";
    for (const auto& b : rows) {
        out << b.q << " | " << bounds_row_text(b) << "\n";
    }
    for (const auto& b : rows) {
        out << "\nq=" << b.q << ":\n";
        out << "  epsilon = " << b.epsilon << "\n";
        out << "  existence interval [9Nq^(N-2) ln q, spread-q+1] = [" << std::fixed << std::setprecision(1)
            << b.lower_interval << ", " << b.upper_interval << "]"
            << (b.lower_interval > static_cast<double>(b.upper_interval) ? " (empty)" : "") << "\n";
        out << "  2q^3 log q = " << b.modified_low_ln << " (ln), " << b.modified_low_log2 << " (log2)\n";
        out << "  ladder k_max = " << b.ladder_k_max << " -> size "
            << b.min_size + static_cast<std::size_t>(b.ladder_k_max) * b.q << "\n";
        out << "  reported search k_max = " << b.search_k_max << " -> size "
            << b.min_size + static_cast<std::size_t>(b.search_k_max) * b.q << "\n";
        if (b.largest_deficiency)
            out << "  reported largest maximal partial spread: δ=" << *b.largest_deficiency << ", size "
                << b.spread_size - static_cast<std::size_t>(*b.largest_deficiency) << "\n";
        out << std::defaultfloat;
    }
    return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximal partial line spreads of PG(5,q): construct, search, verify"};
    app.require_subcommand(1);

    const std::map<std::string, Budget> budgets{{"ci", Budget::ci}, {"long", Budget::long_run}};

    ConstructOptions copt;
    std::uint64_t construct_seed = 0;
    auto* construct = app.add_subcommand("construct", "Build a ladder spread of size q^3+q^2+kq+1");
    construct->add_option("--q", copt.q, "Field order")->required();
    construct->add_option("--k", copt.k, "Ladder steps")->required();
    construct->add_option("--out", copt.out_path, "Certificate path");
    auto* cseed = construct->add_option("--seed", construct_seed, "Randomize the removed hyperplane lines");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Re-verify a certificate file");
    verify->add_option("path", verify_path, "Certificate file")->required();

    SearchOptions sopt;
    auto* search = app.add_subcommand("search", "Search for a maximal partial spread of a given size");
    search->add_option("--q", sopt.q, "Field order")->required();
    search->add_option("--target", sopt.target, "Target size")->required();
    search->add_option("--seed", sopt.rng_seed, "RNG seed");
    search->add_option("--budget", sopt.budget, "Search budget")->transform(CLI::CheckedTransformer(budgets));
    search->add_option("--jobs", sopt.jobs, "Worker threads");
    search->add_option("--out", sopt.out_path, "Certificate path");

    SpectrumOptions popt;
    auto* spectrum = app.add_subcommand("spectrum", "Certify as many sizes as the budget allows");
    spectrum->add_option("--q", popt.q, "Field order")->required();
    spectrum->add_option("--budget", popt.budget, "Search budget")->transform(CLI::CheckedTransformer(budgets));
    spectrum->add_option("--seed", popt.rng_seed, "RNG seed");
    spectrum->add_option("--jobs", popt.jobs, "Worker threads");
    spectrum->add_option("--out", popt.out_dir, "Directory for certificates and summary.csv");

    int bq = 0;
    bool bcsv = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "Print the size bounds table");
    auto* bq_opt = bounds_cmd->add_option("--q", bq, "Field order (default: all)");
    bounds_cmd->add_flag("--csv", bcsv, "Comma-separated output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*construct) {
            if (*cseed) copt.rng_seed = construct_seed;
            return cmd_construct(copt, out, err);
        }
        if (*verify) return cmd_verify(verify_path, out, err);
        if (*search) return cmd_search(sopt, out, err);
        if (*spectrum) return cmd_spectrum(popt, out, err);
        if (*bounds_cmd) return cmd_bounds(*bq_opt ? std::optional<int>(bq) : std::nullopt, bcsv, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace mps::cli
