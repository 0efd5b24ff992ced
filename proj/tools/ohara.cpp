/* Command line front end: exact rewriting runs on integer partitions,
 * cycle-system solves, worst-case benchmark families, and box
 * congruence exports.  Exit codes: 0 success, 1 refused input, 2 broken
 * internal invariant. */

#include <ohara/ohara.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ohara;

namespace {

qvec parse_qlist(const std::string &csv)
{
        qvec out;
        std::istringstream in(csv);
        std::string tok;
        while (std::getline(in, tok, ','))
                out.push_back(parse_frac(tok));
        if (out.empty())
                refuse("empty list: " + csv);
        return out;
}

zvec parse_zlist(const std::string &csv)
{
        zvec out;
        std::istringstream in(csv);
        std::string tok;
        while (std::getline(in, tok, ','))
                out.push_back(parse_zz(tok));
        if (out.empty())
                refuse("empty list: " + csv);
        return out;
}

sequence_spec with_horizon(const sequence_spec &s, const ZZ &h)
{
        std::vector<table_entry> tab;
        for (const auto &[i, e] : s.table()) {
                (void)i;
                tab.push_back(e);
        }
        return sequence_spec(s.kind(), h, s.d(), std::move(tab));
}

/* --spec accepts builtin:<name> or a JSON file path.  A horizon of 0
 * means: builtins get max(needed, 64), files keep their own. */
sequence_spec load_spec(const std::string &ref, const ZZ &horizon,
                        const ZZ &needed)
{
        ZZ fallback = needed > 64 ? needed : ZZ(64);
        if (ref.rfind("builtin:", 0) == 0)
                return make_builtin(ref.substr(8),
                                    horizon > 0 ? horizon : fallback);
        sequence_spec spec = spec_of_json(load_json_file(ref));
        if (horizon > 0)
                return with_horizon(spec, horizon);
        return spec;
}

std::string join_fracs(const qvec &v)
{
        std::string out;
        for (size_t j = 0; j < v.size(); ++j) {
                if (j)
                        out += ' ';
                out += frac_str(v[j]);
        }
        return out;
}

std::string join_ints(const zvec &v)
{
        std::string out;
        for (size_t j = 0; j < v.size(); ++j) {
                if (j)
                        out += ' ';
                out += v[j].str();
        }
        return out;
}

struct map_args {
        std::string spec_ref, input, strategy = "min_part", trace_path;
        std::string budget, horizon = "0";
        uint64_t seed = 0;
        bool speedy = false, fast = false;
};

void cmd_map(const map_args &ma)
{
        partition lam = partition::parse(ma.input);
        sequence_spec spec =
            load_spec(ma.spec_ref, parse_zz(ma.horizon), lam.size());

        if (ma.fast) {
                if (!ma.trace_path.empty())
                        refuse("--trace needs a stepping run, not --fast");
                fast_result r = psi_fast(spec, lam);
                std::cout << r.image.str() << "\n";
                std::cout << "steps=" << r.steps << "\n";
                return;
        }
        run_options opt;
        opt.strat = parse_strategy(ma.strategy, ma.seed);
        opt.speedy = ma.speedy;
        opt.record_steps = !ma.trace_path.empty();
        if (!ma.budget.empty())
                opt.budget = parse_zz(ma.budget);
        trace tr = run_map(spec, lam, opt);
        if (!ma.trace_path.empty())
                write_text_file(ma.trace_path,
                                json_of_trace(tr).dump(2) + "\n");
        std::cout << tr.final.str() << "\n";
        std::cout << "steps=" << tr.step_count << "\n";
}

struct cycle_args {
        std::string i, a, b, t;
        bool inverse = false, cell = false;
};

void cmd_cycle(const cycle_args &ca)
{
        cycle_system sys(parse_qlist(ca.i), parse_qlist(ca.a),
                         parse_qlist(ca.b));
        qvec t = parse_qlist(ca.t);
        if (ca.inverse) {
                qvec back = psi_inverse(sys, t);
                std::cout << "t = " << join_fracs(back) << "\n";
                return;
        }
        if (ca.cell) {
                cell c = local_cell(sys, t);
                std::cout << "sides = " << join_fracs(c.sides) << "\n";
                std::cout << "translation = " << join_fracs(c.translation)
                          << "\n";
                std::cout << "L = " << c.steps << "\n";
                return;
        }
        psi_result r = psi_continuous(sys, t);
        std::cout << "s = " << join_fracs(r.s) << "\n";
        std::cout << "k = " << join_ints(r.k) << "\n";
        std::cout << "L = " << r.steps << "\n";
}

struct maxsteps_args {
        std::string i, a, b;
        bool brute = false;
};

void cmd_maxsteps(const maxsteps_args &ma)
{
        cycle_system sys(parse_qlist(ma.i), parse_qlist(ma.a),
                         parse_qlist(ma.b));
        ZZ formula = max_steps_formula(sys);
        std::cout << "formula = " << formula << "\n";
        if (!ma.brute)
                return;
        size_t m = sys.m();
        qvec t(m, QQ(0));
        zvec arg(m, ZZ(0));
        ZZ best = -1;
        while (true) {
                psi_result r = psi_continuous(sys, t);
                if (r.steps > best) {
                        best = r.steps;
                        for (size_t j = 0; j < m; ++j)
                                arg[j] = numerator(t[j]);
                }
                size_t j = m;
                bool done = true;
                while (j-- > 0) {
                        t[j] += 1;
                        if (t[j] < sys.a[j]) {
                                done = false;
                                break;
                        }
                        t[j] = 0;
                }
                if (done)
                        break;
        }
        std::cout << "brute = " << best << "\n";
        std::cout << "attained_at = " << join_ints(arg) << "\n";
        check(best == formula, "brute-force maximum disagrees with the "
                               "formula");
        qvec extremal(m);
        for (size_t j = 0; j < m; ++j)
                extremal[j] = sys.a[j] - 1;
        check(psi_continuous(sys, extremal).steps == formula,
              "extremal start does not attain the bound");
        std::cout << "extremal_check = ok\n";
}

struct decompose_args {
        std::string i, a, b, out, svg;
        long cap = 2000000;
        bool no_merge = false;
};

void cmd_decompose(const decompose_args &da)
{
        cycle_system sys(parse_qlist(da.i), parse_qlist(da.a),
                         parse_qlist(da.b));
        decomposition d = decompose(sys, da.cap);
        if (!da.no_merge)
                d = merge_pieces(d);
        verify_decomposition(d, d.pieces.size() <= 4096);
        std::cout << "pieces = " << d.pieces.size() << "\n";
        if (!da.out.empty())
                write_text_file(da.out,
                                json_of_decomposition(d).dump(2) + "\n");
        if (!da.svg.empty())
                write_text_file(da.svg, svg_of_decomposition(d));
}

struct euclid_args {
        std::string a, b, out, svg;
};

void cmd_euclid(const euclid_args &ea)
{
        decomposition d = euclid_decompose(parse_frac(ea.a),
                                           parse_frac(ea.b));
        verify_decomposition(d, d.pieces.size() <= 4096);
        std::cout << "pieces = " << d.pieces.size() << "\n";
        if (!ea.out.empty())
                write_text_file(ea.out,
                                json_of_decomposition(d).dump(2) + "\n");
        if (!ea.svg.empty())
                write_text_file(ea.svg, svg_of_decomposition(d));
}

struct bench_args {
        std::string family, params, engines = "naive,speedy,fast", out;
        std::string budget;
        bool timings = false;
};

void cmd_bench(const bench_args &ba)
{
        std::vector<family_instance> instances;
        zvec params = parse_zlist(ba.params);
        if (ba.family == "prime_cycle" || ba.family == "speedy_cycle") {
                instances.push_back(make_family(ba.family, params));
        } else {
                for (const ZZ &k : params)
                        instances.push_back(make_family(ba.family, {k}));
        }

        std::vector<std::string> engines;
        {
                std::istringstream in(ba.engines);
                std::string tok;
                while (std::getline(in, tok, ','))
                        engines.push_back(tok);
        }

        json report;
        report["family"] = ba.family;
        json rows = json::array();
        for (const family_instance &inst : instances) {
                json row;
                row["family"] = inst.family;
                json ps = json::array();
                for (const ZZ &p : inst.params)
                        ps.push_back(p.str());
                row["params"] = ps;
                ZZ n = inst.lambda.size();
                row["n"] = n.str();
                row["input"] = inst.lambda.str();
                if (inst.predicted) {
                        row["predicted"] = inst.predicted->str();
                        row["predicted_what"] = inst.predicted_what;
                }
                std::optional<ZZ> steps_for_ratio;
                for (const std::string &eng : engines) {
                        json cellj;
                        auto t0 = std::chrono::steady_clock::now();
                        try {
                                if (eng == "fast") {
                                        fast_result r =
                                            psi_fast(inst.spec, inst.lambda);
                                        cellj["steps"] = r.steps.str();
                                        if (!steps_for_ratio)
                                                steps_for_ratio = r.steps;
                                } else if (eng == "naive" ||
                                           eng == "speedy") {
                                        run_options opt;
                                        opt.speedy = eng == "speedy";
                                        opt.record_steps = false;
                                        if (!ba.budget.empty())
                                                opt.budget =
                                                    parse_zz(ba.budget);
                                        trace tr = run_map(inst.spec,
                                                           inst.lambda, opt);
                                        cellj["steps"] =
                                            tr.step_count.str();
                                        cellj["firings"] =
                                            tr.firings.str();
                                        steps_for_ratio = tr.step_count;
                                } else {
                                        refuse("unknown engine: " + eng);
                                }
                        } catch (const std::domain_error &e) {
                                cellj["error"] = e.what();
                        }
                        if (ba.timings) {
                                auto dt = std::chrono::duration<double,
                                                                std::milli>(
                                    std::chrono::steady_clock::now() - t0);
                                cellj["wall_ms"] = dt.count();
                        }
                        row[eng] = std::move(cellj);
                }
                if (steps_for_ratio) {
                        /* exact ratios with an integer log, so output
                         * stays byte-stable */
                        ZZ lg = 0, pow = 1;
                        while (pow < n) {
                                pow *= 2;
                                ++lg;
                        }
                        row["steps_per_n"] =
                            frac_str(QQ(*steps_for_ratio, n));
                        row["steps_per_nlogn"] = frac_str(
                            QQ(*steps_for_ratio, n * (lg + 1)));
                }
                rows.push_back(std::move(row));
        }
        report["rows"] = std::move(rows);
        std::string text = report.dump(2) + "\n";
        if (!ba.out.empty())
                write_text_file(ba.out, text);
        std::cout << text;
}

struct verify_args {
        std::string spec_ref;
        long n = 12;
        long cap = enumeration_cap_default;
        std::string horizon = "0";
};

void cmd_verify(const verify_args &va)
{
        ZZ n(va.n);
        sequence_spec spec = load_spec(va.spec_ref, parse_zz(va.horizon), n);
        std::cout << "spec: " << rule_name(spec.kind()) << " (horizon "
                  << spec.horizon() << ")\n";
        if (auto v = validate(spec)) {
                std::cout << "validate: FAIL at i = " << v->i << ": "
                          << v->what << "\n";
                refuse("spec fails validation");
        }
        std::cout << "validate: ok\n";

        auto a_of = [&spec](const ZZ &p) { return spec.a(p); };
        auto b_of = [&spec](const ZZ &p) { return spec.b(p); };
        std::vector<partition> A = enumerate_partitions(n, a_of, {}, va.cap);
        std::vector<partition> B = enumerate_partitions(n, b_of, {}, va.cap);
        std::cout << "|A_" << n << "| = " << A.size() << ", |B_" << n
                  << "| = " << B.size() << "\n";
        check(A.size() == B.size(), "the two sides have different counts");

        std::set<partition> images;
        for (const partition &lam : A) {
                trace tr = psi_naive(spec, lam);
                check(tr.final.size() == lam.size(), "size not preserved");
                fast_result fr = psi_fast(spec, lam);
                check(fr.image == tr.final,
                      "closed-form image disagrees with the run");
                trace sp = psi_speedy(spec, lam);
                check(sp.final == tr.final, "batched run disagrees");
                check(sp.step_count == tr.step_count,
                      "batched step total disagrees");
                images.insert(tr.final);
        }
        std::set<partition> bset(B.begin(), B.end());
        check(images == bset, "images do not exhaust the target side");
        std::cout << "bijection onto B_" << n << ": ok\n";
        std::cout << "fast/speedy/naive agreement on " << A.size()
                  << " inputs: ok\n";
        std::cout << "verified\n";
}

} // namespace

int main(int argc, char **argv)
{
        CLI::App app{"exact partition rewriting engine"};
        app.require_subcommand(1);
        app.set_config("--config");

        map_args ma;
        auto *map_cmd = app.add_subcommand("map", "run the rewriting map on "
                                                  "a partition");
        map_cmd->add_option("--spec", ma.spec_ref,
                            "builtin:<name> or spec JSON path")
            ->required();
        map_cmd->add_option("--input", ma.input,
                            "partition, e.g. \"3^3 4^4 5^2\"")
            ->required();
        map_cmd->add_option("--strategy", ma.strategy,
                            "min_part|max_part|fifo|random");
        map_cmd->add_option("--seed", ma.seed, "seed for --strategy random");
        map_cmd->add_flag("--speedy", ma.speedy, "batch repeated firings");
        map_cmd->add_flag("--fast", ma.fast, "closed-form solver");
        map_cmd->add_option("--trace", ma.trace_path, "write the step list "
                                                      "as JSON");
        map_cmd->add_option("--budget", ma.budget, "step budget override");
        map_cmd->add_option("--horizon", ma.horizon, "spec horizon override");
        map_cmd->callback([&ma] { cmd_map(ma); });

        cycle_args ca;
        auto *cycle_cmd = app.add_subcommand("cycle", "run one cycle system "
                                                      "on a start point");
        cycle_cmd->add_option("--i", ca.i, "weights")->required();
        cycle_cmd->add_option("--a", ca.a, "source sides")->required();
        cycle_cmd->add_option("--b", ca.b, "target sides")->required();
        cycle_cmd->add_option("--t", ca.t, "start point")->required();
        cycle_cmd->add_flag("--inverse", ca.inverse,
                            "treat --t as an endpoint and invert");
        cycle_cmd->add_flag("--cell", ca.cell,
                            "print the constant-translation cell at --t");
        cycle_cmd->callback([&ca] { cmd_cycle(ca); });

        maxsteps_args xa;
        auto *max_cmd = app.add_subcommand("maxsteps", "worst-case step "
                                                       "bound of a cycle "
                                                       "system");
        max_cmd->add_option("--i", xa.i, "weights")->required();
        max_cmd->add_option("--a", xa.a, "source sides")->required();
        max_cmd->add_option("--b", xa.b, "target sides")->required();
        max_cmd->add_flag("--brute", xa.brute,
                          "confirm by running every integer start");
        max_cmd->callback([&xa] { cmd_maxsteps(xa); });

        decompose_args da;
        auto *dec_cmd = app.add_subcommand("decompose", "cut the source box "
                                                        "into translation "
                                                        "pieces");
        dec_cmd->add_option("--i", da.i, "weights")->required();
        dec_cmd->add_option("--a", da.a, "source sides")->required();
        dec_cmd->add_option("--b", da.b, "target sides")->required();
        dec_cmd->add_option("--out", da.out, "JSON output path");
        dec_cmd->add_option("--svg", da.svg, "SVG output path (2-D only)");
        dec_cmd->add_option("--cap", da.cap, "cell cap before merging");
        dec_cmd->add_flag("--no-merge", da.no_merge, "keep raw unit cells");
        dec_cmd->callback([&da] { cmd_decompose(da); });

        euclid_args ea;
        auto *euc_cmd = app.add_subcommand("euclid", "square-by-square "
                                                     "rectangle swap");
        euc_cmd->add_option("--a", ea.a, "width")->required();
        euc_cmd->add_option("--b", ea.b, "height")->required();
        euc_cmd->add_option("--out", ea.out, "JSON output path");
        euc_cmd->add_option("--svg", ea.svg, "SVG output path");
        euc_cmd->callback([&ea] { cmd_euclid(ea); });

        bench_args ba;
        auto *bench_cmd = app.add_subcommand("bench", "step-count growth on "
                                                      "stress families");
        bench_cmd->add_option("--family", ba.family,
                              "prime_cycle|nested_cycles|path_loglog|"
                              "speedy_path|speedy_cycle")
            ->required();
        bench_cmd->add_option("--params", ba.params,
                              "primes for prime_cycle, k list otherwise")
            ->required();
        bench_cmd->add_option("--engines", ba.engines,
                              "subset of naive,speedy,fast");
        bench_cmd->add_option("--out", ba.out, "JSON report path");
        bench_cmd->add_option("--budget", ba.budget, "step budget override");
        bench_cmd->add_flag("--timings", ba.timings,
                            "include wall-clock columns (non-reproducible)");
        bench_cmd->callback([&ba] { cmd_bench(ba); });

        verify_args va;
        auto *ver_cmd = app.add_subcommand("verify", "enumerative and "
                                                     "bijection checks for "
                                                     "one spec");
        ver_cmd->add_option("--spec", va.spec_ref,
                            "builtin:<name> or spec JSON path")
            ->required();
        ver_cmd->add_option("--n", va.n, "partition size to exhaust");
        ver_cmd->add_option("--cap", va.cap, "enumeration cap");
        ver_cmd->add_option("--horizon", va.horizon, "spec horizon override");
        ver_cmd->callback([&va] { cmd_verify(va); });

        try {
                app.parse(argc, argv);
        } catch (const CLI::ParseError &e) {
                int code = app.exit(e);
                return code == 0 ? 0 : 1;
        } catch (const std::domain_error &e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
        } catch (const std::exception &e) {
                std::cerr << "internal error: " << e.what() << "\n";
                return 2;
        }
        return 0;
}
