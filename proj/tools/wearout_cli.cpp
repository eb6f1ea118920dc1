// command-line front end: bound curves, block schedules, simulation, self checks.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wearout/wearout.hpp"

namespace {

using wearout::AliveChannel;
using wearout::DamageParams;
using wearout::Schedule;

struct run_config {
    double eps = 0.11;
    double gamma = 0.5;
    int wear_threshold = 5;
    double eta = 1e-3;
    int n_max = 400;
    double prune_tol = 1e-12;
    std::string log_base = "bits";  // bits | nats
    double third_order = 0.0;
    long long trials = 100000;
    std::uint64_t seed = 1;
    std::string format = "csv";  // csv | json
    std::string out;             // empty = stdout
    int threads = 1;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// flags > config file > defaults; unknown keys are hard errors so typos
// cannot silently fall back to defaults.
void apply_config_file(run_config& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
    for (const auto& [key, val] : j.items()) {
        if (key == "epsilon") c.eps = val.get<double>();
        else if (key == "gamma") c.gamma = val.get<double>();
        else if (key == "s_threshold") c.wear_threshold = val.get<int>();
        else if (key == "eta") c.eta = val.get<double>();
        else if (key == "n_max") c.n_max = val.get<int>();
        else if (key == "prune_tol") c.prune_tol = val.get<double>();
        else if (key == "log_base") c.log_base = val.get<std::string>();
        else if (key == "third_order") c.third_order = val.get<double>();
        else if (key == "trials") c.trials = val.get<long long>();
        else if (key == "seed") c.seed = val.get<std::uint64_t>();
        else if (key == "output_format") c.format = val.get<std::string>();
        else if (key == "output_path") c.out = val.get<std::string>();
        else if (key == "threads") c.threads = val.get<int>();
        else throw std::runtime_error("unknown config key: " + key);
    }
}

void validate(const run_config& c) {
    auto prob = [](double p, const char* name) {
        if (!(p > 0.0 && p < 1.0))
            throw std::runtime_error(std::string(name) + " must lie in (0,1)");
    };
    prob(c.eps, "--eps");
    prob(c.gamma, "--gamma");
    prob(c.eta, "--eta");
    if (c.wear_threshold < 0) throw std::runtime_error("--wear-threshold must be >= 0");
    if (c.n_max < 1) throw std::runtime_error("--n-max must be >= 1");
    if (c.prune_tol < 0.0 || c.prune_tol >= 1.0)
        throw std::runtime_error("--prune-tol must lie in [0,1)");
    if (c.log_base != "bits" && c.log_base != "nats")
        throw std::runtime_error("--log-base must be bits or nats");
    if (c.third_order < -1e6 || c.third_order > 1e6)
        throw std::runtime_error("--third-order out of range");
    if (c.trials < 1) throw std::runtime_error("--trials must be >= 1");
    if (c.format != "csv" && c.format != "json")
        throw std::runtime_error("--format must be csv or json");
    if (c.threads < 1) throw std::runtime_error("--threads must be >= 1");
}

double unit_scale(const run_config& c) { return c.log_base == "nats" ? M_LN2 : 1.0; }

using meta_list = std::vector<std::pair<std::string, std::string>>;

// metadata entries; `quoted` marks values that are JSON strings
meta_list config_meta(const run_config& c) {
    return {
        {"eps", fmt17(c.eps)},
        {"gamma", fmt17(c.gamma)},
        {"wear_threshold", std::to_string(c.wear_threshold)},
        {"eta", fmt17(c.eta)},
        {"n_max", std::to_string(c.n_max)},
        {"prune_tol", fmt17(c.prune_tol)},
        {"log_base", c.log_base},
        {"third_order", fmt17(c.third_order)},
        {"trials", std::to_string(c.trials)},
        {"seed", std::to_string(c.seed)},
        {"threads", std::to_string(c.threads)},
        {"format", c.format},
        {"out", c.out.empty() ? "-" : c.out},
    };
}

bool meta_is_string(const std::string& key) {
    return key == "log_base" || key == "format" || key == "out" || key == "bound" ||
           key == "schedule" || key == "schedule_file";
}

std::string json_escape(const std::string& s) {
    std::string r;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') r += '\\';
        r += ch;
    }
    return r;
}

std::string schedule_str(const std::vector<std::pair<int, int>>& blocks) {
    std::string s;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(blocks[i].first) + ":" + std::to_string(blocks[i].second);
    }
    return s;
}

std::vector<std::pair<int, int>> parse_schedule(const std::string& text) {
    std::vector<std::pair<int, int>> blocks;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        int n = 0, h = 0;
        if (std::sscanf(tok.c_str(), "%d:%d", &n, &h) != 2)
            throw std::runtime_error("bad schedule token: " + tok);
        blocks.emplace_back(n, h);
    }
    if (blocks.empty()) throw std::runtime_error("empty schedule");
    return blocks;
}

void write_output(const run_config& c, const std::string& text) {
    if (c.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + c.out);
    f << text;
}

struct curve_row {
    int n;
    double value;
    int num_blocks;
    std::string schedule;
};

std::string render_curve(const run_config& c, const std::string& command,
                         const meta_list& extra, const std::vector<curve_row>& rows) {
    meta_list meta = config_meta(c);
    meta.insert(meta.end(), extra.begin(), extra.end());
    std::string out;
    if (c.format == "csv") {
        out += "# command=" + command + "\n";
        for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
        out += "N,value,num_blocks,schedule\n";
        for (const auto& r : rows)
            out += std::to_string(r.n) + "," + fmt17(r.value) + "," +
                   std::to_string(r.num_blocks) + "," + r.schedule + "\n";
    } else {
        out += "{\n  \"command\": \"" + command + "\",\n  \"config\": {";
        for (std::size_t i = 0; i < meta.size(); ++i) {
            if (i) out += ", ";
            out += "\"" + meta[i].first + "\": ";
            if (meta_is_string(meta[i].first))
                out += "\"" + json_escape(meta[i].second) + "\"";
            else
                out += meta[i].second;
        }
        out += "},\n  \"rows\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out += "    {\"N\": " + std::to_string(rows[i].n) + ", \"value\": " +
                   fmt17(rows[i].value) + ", \"num_blocks\": " +
                   std::to_string(rows[i].num_blocks) + ", \"schedule\": \"" +
                   rows[i].schedule + "\"}";
            out += (i + 1 < rows.size()) ? ",\n" : "\n";
        }
        out += "  ]\n}\n";
    }
    return out;
}

int cmd_achievability(const run_config& c) {
    const auto ch = AliveChannel::bsc(c.eps);
    const DamageParams dp{c.gamma, c.wear_threshold};
    const auto r = wearout::solve_achievability(c.n_max, dp, c.eta, ch, c.third_order,
                                                c.prune_tol);
    const double scale = unit_scale(c);
    std::vector<curve_row> rows;
    rows.reserve(c.n_max);
    for (int n = 1; n <= c.n_max; ++n) {
        const auto s = wearout::traceback(r, n);
        std::vector<std::pair<int, int>> blocks;
        for (const auto& b : s.blocks) blocks.emplace_back(b.n, b.weight);
        rows.push_back({n, r.curve[n] * scale, static_cast<int>(blocks.size()),
                        schedule_str(blocks)});
    }
    write_output(c, render_curve(c, "achievability", {}, rows));
    return 0;
}

int cmd_converse(const run_config& c) {
    const auto ch = AliveChannel::bsc(c.eps);
    const DamageParams dp{c.gamma, c.wear_threshold};
    wearout::ConverseOpts opts;
    opts.threads = c.threads;
    const auto r = wearout::solve_converse(c.n_max, dp, c.eta, ch, c.prune_tol, opts);
    const double scale = unit_scale(c);
    std::vector<curve_row> rows;
    rows.reserve(c.n_max);
    for (int n = 1; n <= c.n_max; ++n) {
        const auto s = wearout::traceback_converse(r, n);
        std::vector<std::pair<int, int>> blocks;
        for (const auto& b : s.blocks) blocks.emplace_back(b.n, b.weight);
        rows.push_back({n, r.curve[n] * scale, static_cast<int>(blocks.size()),
                        schedule_str(blocks)});
    }
    write_output(c, render_curve(c, "converse", {}, rows));
    return 0;
}

int cmd_single_block(const run_config& c, const std::string& bound) {
    const auto ch = AliveChannel::bsc(c.eps);
    const DamageParams dp{c.gamma, c.wear_threshold};
    const double scale = unit_scale(c);
    std::vector<curve_row> rows;
    rows.reserve(c.n_max);
    if (bound == "achievability") {
        const auto r = wearout::solve_achievability(c.n_max, dp, c.eta, ch,
                                                    c.third_order, c.prune_tol);
        for (int n = 1; n <= c.n_max; ++n) {
            const int h = r.single_best_h[n];
            rows.push_back({n, r.single_curve[n] * scale, h > 0 ? 1 : 0,
                            h > 0 ? std::to_string(n) + ":" + std::to_string(h) : ""});
        }
    } else {
        wearout::ConverseOpts opts;
        opts.threads = c.threads;
        const auto r = wearout::solve_converse(c.n_max, dp, c.eta, ch, c.prune_tol, opts);
        for (int n = 1; n <= c.n_max; ++n) {
            const int w = r.single_best_w[n];
            rows.push_back({n, r.single_curve[n] * scale, w > 0 ? 1 : 0,
                            w > 0 ? std::to_string(n) + ":" + std::to_string(w) : ""});
        }
    }
    write_output(c, render_curve(c, "single-block", {{"bound", bound}}, rows));
    return 0;
}

int cmd_simulate(const run_config& c, const std::string& schedule_file) {
    std::ifstream in(schedule_file);
    if (!in) throw std::runtime_error("cannot open schedule file: " + schedule_file);
    std::string line, sched_text;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        sched_text = line;
        break;
    }
    if (sched_text.empty()) throw std::runtime_error("no schedule found in " + schedule_file);
    const auto blocks = parse_schedule(sched_text);

    const auto ch = AliveChannel::bsc(c.eps);
    const DamageParams dp{c.gamma, c.wear_threshold};
    const Schedule sched =
        wearout::evaluate_schedule(blocks, dp, c.eta, ch, c.third_order);
    const auto sim = wearout::simulate_schedule(sched, dp, c.trials, c.seed, c.threads);

    // the feedback decomposition must hold to roundoff whatever the parameters
    double fb_gap = 0.0;
    for (int w1 = 0; w1 <= 40; ++w1)
        for (int w2 = 0; w2 <= 40; ++w2)
            fb_gap = std::max(
                fb_gap,
                wearout::feedback_identity(w1, w2, c.wear_threshold, c.gamma).gap());
    const bool fb_pass = fb_gap <= 1e-12;

    const double scale = unit_scale(c);
    bool all_ci = true;
    for (std::size_t i = 0; i < sched.blocks.size(); ++i)
        all_ci = all_ci && std::fabs(sim.alive_fraction[i] - sim.predicted_alive[i]) <=
                               sim.ci_half_width[i];

    meta_list meta = config_meta(c);
    meta.emplace_back("schedule_file", schedule_file);
    meta.emplace_back("schedule", schedule_str(blocks));
    meta.emplace_back("expected_log_volume", fmt17(sched.expected_log_volume * scale));
    meta.emplace_back("empirical_log_volume", fmt17(sim.empirical_log_volume * scale));
    meta.emplace_back("all_within_ci", all_ci ? "1" : "0");
    meta.emplace_back("feedback_max_gap", fmt17(fb_gap));
    meta.emplace_back("feedback_pass", fb_pass ? "1" : "0");

    std::string out;
    if (c.format == "csv") {
        out += "# command=simulate\n";
        for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
        out += "block,n,h,cum_h,log_m,predicted_alive,empirical_alive,ci_half_width,within_ci\n";
        int cum = 0;
        for (std::size_t i = 0; i < sched.blocks.size(); ++i) {
            const auto& b = sched.blocks[i];
            cum += b.weight;
            const bool ok = std::fabs(sim.alive_fraction[i] - sim.predicted_alive[i]) <=
                            sim.ci_half_width[i];
            out += std::to_string(i + 1) + "," + std::to_string(b.n) + "," +
                   std::to_string(b.weight) + "," + std::to_string(cum) + "," +
                   fmt17(b.log_m * scale) + "," + fmt17(sim.predicted_alive[i]) + "," +
                   fmt17(sim.alive_fraction[i]) + "," + fmt17(sim.ci_half_width[i]) +
                   "," + (ok ? "1" : "0") + "\n";
        }
    } else {
        out += "{\n  \"command\": \"simulate\",\n  \"config\": {";
        const meta_list base = config_meta(c);
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (i) out += ", ";
            out += "\"" + base[i].first + "\": ";
            if (meta_is_string(base[i].first))
                out += "\"" + json_escape(base[i].second) + "\"";
            else
                out += base[i].second;
        }
        out += "},\n";
        out += "  \"schedule_file\": \"" + json_escape(schedule_file) + "\",\n";
        out += "  \"schedule\": \"" + schedule_str(blocks) + "\",\n";
        out += "  \"expected_log_volume\": " + fmt17(sched.expected_log_volume * scale) +
               ",\n";
        out += "  \"empirical_log_volume\": " + fmt17(sim.empirical_log_volume * scale) +
               ",\n";
        out += std::string("  \"all_within_ci\": ") + (all_ci ? "true" : "false") + ",\n";
        out += "  \"feedback_max_gap\": " + fmt17(fb_gap) + ",\n";
        out += std::string("  \"feedback_pass\": ") + (fb_pass ? "true" : "false") + ",\n";
        out += "  \"blocks\": [\n";
        int cum = 0;
        for (std::size_t i = 0; i < sched.blocks.size(); ++i) {
            const auto& b = sched.blocks[i];
            cum += b.weight;
            const bool ok = std::fabs(sim.alive_fraction[i] - sim.predicted_alive[i]) <=
                            sim.ci_half_width[i];
            out += "    {\"block\": " + std::to_string(i + 1) + ", \"n\": " +
                   std::to_string(b.n) + ", \"h\": " + std::to_string(b.weight) +
                   ", \"cum_h\": " + std::to_string(cum) + ", \"log_m\": " +
                   fmt17(b.log_m * scale) + ", \"predicted_alive\": " +
                   fmt17(sim.predicted_alive[i]) + ", \"empirical_alive\": " +
                   fmt17(sim.alive_fraction[i]) + ", \"ci_half_width\": " +
                   fmt17(sim.ci_half_width[i]) + ", \"within_ci\": " +
                   (ok ? "true" : "false") + "}";
            out += (i + 1 < sched.blocks.size()) ? ",\n" : "\n";
        }
        out += "  ]\n}\n";
    }
    write_output(c, out);
    return fb_pass ? 0 : 3;
}

// ---- selftest: desk-scale property checks against independent enumeration ----

double brute_achievability(int N, const DamageParams& dp, double eta,
                           const AliveChannel& ch, double third_order) {
    double best = 0.0;
    std::function<void(int, int, double)> rec = [&](int used, int weight, double vol) {
        if (used == N) {
            if (weight >= 1 && weight <= N - 1) best = std::max(best, vol);
            return;
        }
        for (int n = 1; n <= N - used; ++n)
            for (int h = 1; h <= n && weight + h <= N - 1; ++h) {
                const double lm = wearout::log_m_ccc(n, h, eta, ch, third_order);
                const double alive =
                    wearout::binom_cdf(dp.threshold, weight + h, dp.gamma);
                rec(used + n, weight + h, vol + alive * lm);
            }
    };
    rec(0, 0, 0.0);
    return best;
}

double brute_converse(int N, const DamageParams& dp, double eta, const AliveChannel& ch,
                      const wearout::ConverseOpts& opts) {
    double best = 0.0;
    std::function<void(int, int, double)> rec = [&](int used, int budget, double vol) {
        if (used == N) {
            if (budget >= 1 && budget <= N - 1) best = std::max(best, vol);
            return;
        }
        for (int n = 1; n <= N - used; ++n)
            for (int k = 0; budget + k <= std::min(used + n, N - 1); ++k) {
                const double lm = wearout::log_m_avg(n, k + 1.0, eta, ch);
                double term = 0.0;
                if (lm > 0.0)
                    term = wearout::alive_upper(lm, used + n, budget + k, dp, opts) * lm;
                rec(used + n, budget + k, vol + term);
            }
    };
    rec(0, 0, 0.0);
    return best;
}

int cmd_selftest(const run_config& c, double be_scale) {
    const auto ch = AliveChannel::bsc(c.eps);
    const DamageParams dp{c.gamma, c.wear_threshold};
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& note = "") {
        std::printf("%s - %s%s%s\n", ok ? "ok" : "FAIL", name, note.empty() ? "" : ": ",
                    note.c_str());
        if (!ok) ++failures;
    };

    {  // exact binomial survival stays under the normal-plus-slack envelope
        bool ok = true;
        double worst = 0.0;
        for (int s : {1, dp.threshold})
            for (int w = 0; w <= 1000; ++w) {
                const double cdf = wearout::binom_cdf(s, w, c.gamma);
                const double env =
                    wearout::be_envelope(static_cast<double>(w), s, c.gamma, be_scale);
                if (cdf > env + 1e-15) {
                    ok = false;
                    worst = std::max(worst, cdf - env);
                }
            }
        report("envelope_dominance", ok, ok ? "" : "worst excess " + fmt17(worst));
    }
    {  // both envelope pieces must be monotone non-increasing
        bool ok = true;
        double pn = wearout::f_n(0.01, dp.threshold, c.gamma);
        double pb = wearout::f_be(0.01, c.gamma, be_scale);
        for (int i = 2; i <= 20000; ++i) {
            const double cn = wearout::f_n(0.01 * i, dp.threshold, c.gamma);
            const double cb = wearout::f_be(0.01 * i, c.gamma, be_scale);
            if (cn > pn + 1e-12 || cb > pb + 1e-12) ok = false;
            pn = cn;
            pb = cb;
        }
        report("envelope_monotone", ok);
    }
    {  // Q(Q^-1(eta)) round trip
        bool ok = true;
        for (double eta : {1e-6, 1e-4, 1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9}) {
            const double back = wearout::gaussian_q(wearout::q_inv(eta));
            if (std::fabs(back - eta) > 1e-9 * std::max(eta, 1e-6)) ok = false;
        }
        report("q_inv_roundtrip", ok);
    }
    {  // binomial pmf/cdf self consistency
        bool ok = true;
        for (int h = 0; h <= 40 && ok; ++h) {
            double sum = 0.0;
            for (int d = 0; d <= h; ++d) sum += wearout::binom_pmf(d, h, c.gamma);
            if (std::fabs(sum - 1.0) > 1e-12) ok = false;
            const double cur = wearout::binom_cdf(dp.threshold, h, c.gamma);
            if (cur < -1e-15 || cur > 1.0 + 1e-15) ok = false;
            if (h > 0 &&
                cur > wearout::binom_cdf(dp.threshold, h - 1, c.gamma) + 1e-12)
                ok = false;
        }
        report("binomial_consistency", ok);
    }
    {  // damage decomposition across a block boundary is exact
        double gap = 0.0;
        for (int w1 = 0; w1 <= 40; ++w1)
            for (int w2 = 0; w2 <= 40; ++w2)
                gap = std::max(gap,
                               wearout::feedback_identity(w1, w2, dp.threshold, c.gamma)
                                   .gap());
        report("feedback_identity", gap <= 1e-12, "max gap " + fmt17(gap));
    }
    {  // planner equals exhaustive enumeration at toy sizes
        bool ok = true;
        const auto r =
            wearout::solve_achievability(8, dp, c.eta, ch, c.third_order, 1e-12);
        for (int N = 2; N <= 8; ++N) {
            const double ref = brute_achievability(N, dp, c.eta, ch, c.third_order);
            if (std::fabs(r.curve[N] - ref) > 1e-9) ok = false;
        }
        report("planner_oracle", ok);
    }
    {  // upper bound dominates every enumerated weight assignment
        bool ok = true;
        for (int M : {2, 4})
            for (int N = 2; N <= 5 && ok; ++N) {
                const double lm = std::log2(double(M));
                std::vector<int> w(M, 0);
                std::function<void(int)> rec = [&](int i) {
                    if (!ok) return;
                    if (i == M) {
                        double avg = 0.0, mean_alive = 0.0;
                        for (int x : w) {
                            avg += double(x) / M;
                            mean_alive += wearout::binom_cdf(dp.threshold, x, c.gamma) / M;
                        }
                        const double up = wearout::alive_upper(lm, N, avg, dp);
                        if (up < mean_alive - 1e-9 || up > 1.0 + 1e-12) ok = false;
                        return;
                    }
                    for (int x = 0; x <= N; ++x) {
                        w[i] = x;
                        rec(i + 1);
                    }
                };
                rec(0);
            }
        report("alive_bound_dominance", ok);
    }
    {  // converse planner equals exhaustive enumeration at toy sizes
        bool ok = true;
        wearout::ConverseOpts opts;
        const auto r = wearout::solve_converse(6, dp, c.eta, ch, 1e-12, opts);
        for (int N = 2; N <= 6; ++N) {
            const double ref = brute_converse(N, dp, c.eta, ch, opts);
            if (std::fabs(r.curve[N] - ref) > 1e-9) ok = false;
        }
        report("converse_oracle", ok);
    }
    {  // Monte Carlo alive fractions track the binomial chain, and reruns agree
        const auto sched = wearout::evaluate_schedule({{30, 3}, {20, 3}, {10, 2}}, dp,
                                                      c.eta, ch, c.third_order);
        const long long trials = std::min<long long>(c.trials, 1000000);
        const auto a = wearout::simulate_schedule(sched, dp, trials, c.seed, c.threads);
        const auto b = wearout::simulate_schedule(sched, dp, trials, c.seed, c.threads);
        bool ok = a.alive_counts == b.alive_counts;
        for (std::size_t i = 0; i < sched.blocks.size(); ++i)
            if (std::fabs(a.alive_fraction[i] - a.predicted_alive[i]) >
                a.ci_half_width[i])
                ok = false;
        report("simulator_tracking", ok);
    }
    {  // traced plans re-evaluate to the reported optimum
        const int nm = std::min(c.n_max, 80);
        const auto r =
            wearout::solve_achievability(nm, dp, c.eta, ch, c.third_order, 1e-12);
        bool ok = true;
        for (int N = 2; N <= nm; ++N) {
            const auto s = wearout::traceback(r, N);
            if (std::fabs(s.expected_log_volume - r.curve[N]) > 1e-9) ok = false;
            if (r.single_curve[N] > r.curve[N] + 1e-12) ok = false;
        }
        report("traceback_consistency", ok);
    }

    std::printf("%s (%d failure%s)\n", failures == 0 ? "PASS" : "FAIL", failures,
                failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    run_config cfg;

    // config file applies below flag level, so it is read before CLI11 parses
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    }
    if (!config_path.empty()) {
        try {
            apply_config_file(cfg, config_path);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 2;
        }
    }

    CLI::App app{"bounds and block schedules for channels that wear out"};
    app.require_subcommand(1);
    std::string config_flag;
    app.add_option("--config", config_flag, "JSON config file (flags override it)");
    app.add_option("--eps", cfg.eps, "BSC crossover probability");
    app.add_option("--gamma", cfg.gamma, "damage probability per transmitted 1");
    app.add_option("--wear-threshold", cfg.wear_threshold, "damage the channel survives");
    app.add_option("--eta", cfg.eta, "per-block decoding error budget");
    app.add_option("--n-max", cfg.n_max, "largest total blocklength");
    app.add_option("--prune-tol", cfg.prune_tol, "drop weights once survival falls below");
    app.add_option("--log-base", cfg.log_base, "bits or nats");
    app.add_option("--third-order", cfg.third_order, "additive code-size correction, bits");
    app.add_option("--trials", cfg.trials, "Monte Carlo trials");
    app.add_option("--seed", cfg.seed, "Monte Carlo seed");
    app.add_option("--format", cfg.format, "csv or json");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--threads", cfg.threads, "worker thread cap");

    auto* ach = app.add_subcommand("achievability", "best multi-block plan per N");
    ach->fallthrough();
    auto* con = app.add_subcommand("converse", "upper bound per N");
    con->fallthrough();
    auto* sgl = app.add_subcommand("single-block", "one-block restriction per N");
    sgl->fallthrough();
    std::string bound = "achievability";
    sgl->add_option("--bound", bound, "achievability or converse")
        ->check(CLI::IsMember({"achievability", "converse"}));
    auto* sim = app.add_subcommand("simulate", "Monte Carlo check of a block plan");
    sim->fallthrough();
    std::string schedule_file;
    sim->add_option("schedule_file", schedule_file, "file holding n:h;n:h... on one line")
        ->required();
    auto* self = app.add_subcommand("selftest", "desk-scale property checks");
    self->fallthrough();
    double be_scale = 1.0;
    self->add_option("--be-scale", be_scale)->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        validate(cfg);
        if (ach->parsed()) return cmd_achievability(cfg);
        if (con->parsed()) return cmd_converse(cfg);
        if (sgl->parsed()) return cmd_single_block(cfg, bound);
        if (sim->parsed()) return cmd_simulate(cfg, schedule_file);
        if (self->parsed()) return cmd_selftest(cfg, be_scale);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
