// relaynet command-line front end.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <relaynet/detcap.hpp>
#include <relaynet/detsim.hpp>
#include <relaynet/gaussian.hpp>
#include <relaynet/network.hpp>
#include <relaynet/qmf.hpp>

using namespace relaynet;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class T>
const T& expect_model(const AnyNetwork& any, const char* what) {
    if (const T* p = std::get_if<T>(&any)) return *p;
    throw ArgumentError(std::string("this command needs a ") + what + " network");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    return out;
}

std::complex<double> gain(const GaussNetwork& net, int a, int b) {
    const GaussEdge* e = net.edge(a, b);
    return e ? e->H(0, 0) : std::complex<double>{};
}

std::vector<int> relays_of(const GaussNetwork& net) {
    std::vector<int> r;
    for (int v = 0; v < static_cast<int>(net.size()); ++v)
        if (v != net.source && v != net.dest()) r.push_back(v);
    return r;
}

std::pair<double, double> parse_range(const std::string& s) {
    auto c = s.find(':');
    if (c == std::string::npos) throw ArgumentError("range must look like lo:hi, got " + s);
    try {
        return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
    } catch (const std::exception&) {
        throw ArgumentError("range must look like lo:hi, got " + s);
    }
}

// ---------------------------------------------------------------- det-capacity

struct DetCapacityArgs {
    std::string file;
    bool multicast = false;
    bool table = false;
    std::size_t node_cap = kDefaultNodeCap;
    int grid = 8;
};

void cmd_det_capacity(const DetCapacityArgs& a) {
    auto any = parse_network(read_file(a.file));
    if (auto* fn = std::get_if<FunctionalNetwork>(&any)) {
        auto r = general_det_rate(*fn, a.grid);
        std::cout << "achievable rate: " << num(r.rate) << "\n";
        std::cout << "search: " << (r.exhaustive ? "exhaustive" : "coordinate ascent") << ", grid " << a.grid << "\n";
        for (std::size_t v = 0; v < fn->size(); ++v) {
            std::cout << "pmf " << fn->ids[v] << ":";
            for (double p : r.pmf[v]) std::cout << " " << num(p);
            std::cout << "\n";
        }
        return;
    }
    const auto& net = expect_model<DetNetwork>(any, "deterministic");
    CapacityResult r = a.multicast ? multicast_capacity(net, net.destinations, a.table, a.node_cap)
                                   : min_cut_capacity(net, -1, a.table, a.node_cap);
    std::cout << (a.multicast ? "multicast capacity: " : "capacity: ") << r.value << "\n";
    std::cout << "min cut: " << cut_label(net, r.argmin_cut) << "\n";
    if (a.multicast) std::cout << "bottleneck destination: " << net.ids[r.argmin_cut.dest] << "\n";
    if (a.table) {
        std::cout << "cut,destination,value\n";
        for (const auto& c : r.per_cut)
            std::cout << "\"" << cut_label(net, c.cut) << "\"," << net.ids[c.cut.dest] << "," << c.value << "\n";
    }
}

// ---------------------------------------------------------------- unfold

struct UnfoldArgs {
    std::string file;
    int K = 1;
};

void cmd_unfold(const UnfoldArgs& a) {
    const auto net = expect_model<DetNetwork>(parse_network(read_file(a.file)), "deterministic");
    auto r = unfolded_capacity(net, a.K);
    const double n = static_cast<double>(net.size());
    bool ok = r.value <= a.K * r.cbar + 1e-9 && r.value >= (a.K - n) * r.cbar - 1e-9;
    std::cout << "K: " << a.K << "\n";
    std::cout << "cut-set capacity: " << num(r.cbar) << "\n";
    std::cout << "unfolded capacity: " << num(r.value) << "\n";
    std::cout << "per stage: " << num(r.value / a.K) << "\n";
    std::cout << "sandwich (K-|V|)C <= C_unf <= K C: " << (ok ? "holds" : "VIOLATED") << "\n";
    if (!ok) throw std::logic_error("unfolding sandwich violated");
}

// ---------------------------------------------------------------- sim

struct SimArgs {
    std::string file;
    std::string scheme = "lff";
    int T = 4;
    double R = 1.0;
    std::size_t trials = 1000;
    std::uint64_t seed = kDefaultSeed;
    std::string csv;
    unsigned threads = 0;
    std::size_t mc_samples = 64;
};

void cmd_sim(const SimArgs& a) {
    auto any = parse_network(read_file(a.file));
    std::ostringstream js;
    if (a.scheme == "lff") {
        const auto& net = expect_model<DetNetwork>(any, "deterministic");
        auto r = estimate_error(net, a.T, a.R, a.trials, a.seed, !a.csv.empty(), a.threads);
        if (!a.csv.empty()) {
            auto out = open_out(a.csv);
            out << "trial,error_flag\n";
            for (std::size_t t = 0; t < r.error_flags.size(); ++t) out << t << "," << int(r.error_flags[t]) << "\n";
        }
        js << "{\"scheme\": \"lff\", \"T\": " << a.T << ", \"R\": " << num(a.R) << ", \"seed\": " << a.seed
           << ", \"trials\": " << r.trials << ", \"errors\": " << r.errors << ", \"error_rate\": " << num(r.p_hat)
           << ", \"sigma\": " << num(r.sigma) << ", \"ci\": [" << num(r.ci_low) << ", " << num(r.ci_high)
           << "], \"bound\": " << num(r.bound) << ", \"mincut\": " << r.mincut << "}";
    } else if (a.scheme == "qmf") {
        const auto& net = expect_model<GaussNetwork>(any, "gaussian");
        auto r = simulate_qmf(net, a.T, a.R, a.trials, a.seed, a.mc_samples, !a.csv.empty(), a.threads);
        if (!a.csv.empty()) {
            auto out = open_out(a.csv);
            out << "trial,symbol,decoded,error\n";
            for (std::size_t t = 0; t < r.records.size(); ++t)
                out << t << "," << r.records[t].symbol << "," << r.records[t].decoded << ","
                    << int(r.records[t].symbol != r.records[t].decoded) << "\n";
        }
        js << "{\"scheme\": \"qmf\", \"T\": " << a.T << ", \"R\": " << num(a.R) << ", \"seed\": " << a.seed
           << ", \"trials\": " << r.trials << ", \"messages\": " << r.messages << ", \"errors\": " << r.errors
           << ", \"error_rate\": " << num(r.p_hat) << ", \"sigma\": " << num(r.sigma) << ", \"ci\": ["
           << num(r.ci_low) << ", " << num(r.ci_high) << "], \"bound\": null}";
    } else {
        throw ArgumentError("unknown scheme " + a.scheme + " (use lff or qmf)");
    }
    std::cout << js.str() << "\n";
}

// ---------------------------------------------------------------- gauss

struct GaussArgs {
    std::string file;
    std::string bound = "cutset";
    bool table = false;
    std::size_t node_cap = kDefaultNodeCap;
    std::size_t trials = 1000;
    std::uint64_t seed = kDefaultSeed;
    std::string fading = "rayleigh";
    double kappa = 0.0;
    std::vector<double> rates;
    std::string out;
};

void cmd_gauss(const GaussArgs& a) {
    const auto net = expect_model<GaussNetwork>(parse_network(read_file(a.file)), "gaussian");
    const std::string& b = a.bound;
    if (b == "cutset") {
        auto r = cutset_bounds(net, -1, a.table, a.node_cap);
        std::cout << "cutset upper: " << num(r.upper) << "\n";
        std::cout << "argmin (upper): " << cut_label(net, r.argmin_upper) << "\n";
        std::cout << "cutset iid: " << num(r.iid) << "\n";
        std::cout << "argmin (iid): " << cut_label(net, r.argmin_iid) << "\n";
        if (a.table) {
            std::cout << "cut,upper,iid\n";
            for (const auto& c : r.per_cut) std::cout << "\"" << cut_label(net, c.cut) << "\"," << num(c.upper) << "," << num(c.iid) << "\n";
        }
    } else if (b == "df") {
        auto r = relays_of(net);
        if (net.size() != 3 || !net.single_antenna()) throw ArgumentError("df needs a single-antenna S, R, D network");
        auto sd = gain(net, net.source, net.dest()), sr = gain(net, net.source, r[0]), rd = gain(net, r[0], net.dest());
        double df = df_rate_relay(sd, sr, rd), cs = relay_cutset(sd, sr, rd);
        std::cout << "decode-forward: " << num(df) << "\n";
        std::cout << "cutset: " << num(cs) << "\n";
        std::cout << "gap: " << num(cs - df) << "\n";
    } else if (b == "pdf") {
        auto r = relays_of(net);
        if (net.size() != 4 || !net.single_antenna()) throw ArgumentError("pdf needs a single-antenna diamond network");
        auto s1 = gain(net, net.source, r[0]), s2 = gain(net, net.source, r[1]);
        auto d1 = gain(net, r[0], net.dest()), d2 = gain(net, r[1], net.dest());
        double pdf = pdf_rate_diamond(s1, s2, d1, d2), cs = diamond_cutset(s1, s2, d1, d2);
        std::cout << "partial decode-forward: " << num(pdf) << "\n";
        std::cout << "cutset: " << num(cs) << "\n";
        std::cout << "gap: " << num(cs - pdf) << "\n";
        std::cout << "decode-forward bound: " << num(diamond_df_bound(s1, s2, d1, d2)) << "\n";
        std::cout << "amplify-forward (illustrative): " << num(af_rate_diamond(s1, s2, d1, d2)) << "\n";
    } else if (b == "halfduplex") {
        auto r = half_duplex_cutset(net);
        std::cout << "half-duplex bound: " << num(r.rate) << "\n";
        std::cout << "inputs: i.i.d. per mode\n";
        std::cout << "cuts: " << r.cuts << "\n";
        std::cout << "mode,time\n";
        for (std::size_t m = 0; m < r.schedule.modes.size(); ++m) {
            Cut tx{r.schedule.modes[m], net.dest()};
            std::cout << "\"" << cut_label(net, tx) << "\"," << num(r.schedule.t[m]) << "\n";
        }
    } else if (b == "lowrate") {
        auto r = orthogonal_routing_bound(net);
        double c = cutset_bounds(net, -1, false, a.node_cap).upper;
        std::cout << "routing flow: " << num(r.flow) << "\n";
        std::cout << "degree: " << r.degree << "\n";
        std::cout << "lambda: " << num(r.lambda) << "\n";
        std::cout << "cutset upper: " << num(c) << "\n";
        std::cout << "flow / cutset: " << (c > 0 ? num(r.flow / c) : std::string("n/a")) << "\n";
    } else if (b == "ergodic" || b == "outage") {
        GainSampler s;
        if (a.fading == "rayleigh") s = rayleigh_sampler(net);
        else if (a.fading == "constant") s = constant_sampler(net);
        else throw ArgumentError("unknown fading law " + a.fading + " (use rayleigh or constant)");
        if (b == "ergodic") {
            auto r = ergodic_cutset(s, a.trials, a.seed);
            std::cout << "ergodic cutset: " << num(r.mean) << "\n";
            std::cout << "standard error: " << num(r.stderr_) << "\n";
            std::cout << "ci: [" << num(r.ci_low) << ", " << num(r.ci_high) << "]\n";
            std::cout << "trials: " << a.trials << "\nseed: " << a.seed << "\n";
        } else {
            if (a.rates.empty()) throw ArgumentError("outage needs --rates");
            auto pts = outage_curve(s, a.rates, a.kappa, a.trials, a.seed);
            std::ostringstream csv;
            csv << "R,lower,upper\n";
            for (const auto& p : pts) csv << num(p.R) << "," << num(p.lower) << "," << num(p.upper) << "\n";
            if (a.out.empty()) {
                std::cout << csv.str();
            } else {
                open_out(a.out) << csv.str();
                std::cout << "wrote " << pts.size() << " rows to " << a.out << "\n";
            }
        }
    } else {
        throw ArgumentError("unknown bound " + b);
    }
}

// ---------------------------------------------------------------- gap-surface

struct SurfaceArgs {
    std::string x_range = "-20:60";
    std::string y_range = "-20:60";
    double step = 1.0;
    double sd_db = 20.0;
    std::string out;
};

void cmd_gap_surface(const SurfaceArgs& a) {
    auto [x0, x1] = parse_range(a.x_range);
    auto [y0, y1] = parse_range(a.y_range);
    auto s = df_gap_surface(db_range(x0, x1, a.step), db_range(y0, y1, a.step), a.sd_db);
    std::ostringstream csv;
    csv << "x_db,y_db,gap\n";
    for (const auto& p : s.points) csv << num(p.x_db) << "," << num(p.y_db) << "," << num(p.gap) << "\n";
    if (a.out.empty()) {
        std::cout << csv.str();
        return;
    }
    open_out(a.out) << csv.str();
    std::cout << "points: " << s.points.size() << "\n";
    std::cout << "max gap: " << num(s.max_gap) << " at x_db=" << num(s.argmax.x_db) << " y_db=" << num(s.argmax.y_db)
              << "\n";
    std::cout << "min gap: " << num(s.min_gap) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relaynet: capacities, bounds and simulations for relay networks"};
    app.require_subcommand(1);
    app.footer(R"(CSV outputs (fixed headers):
  sim --scheme lff --csv FILE     trial,error_flag
  sim --scheme qmf --csv FILE     trial,symbol,decoded,error
  gauss --bound outage            R,lower,upper
  gap-surface                     x_db,y_db,gap   (x = RD/SD dB outer, y = SR/SD dB inner)
  det-capacity --table            cut,destination,value
  gauss --bound cutset --table    cut,upper,iid
Seeds default to )" + std::to_string(kDefaultSeed) + R"(.
Exit codes: 0 ok, 1 internal error, 2 bad arguments or input, 3 resource limit.)");

    DetCapacityArgs dc;
    auto* c_dc = app.add_subcommand("det-capacity", "min-cut capacity of a deterministic network");
    c_dc->add_option("file", dc.file, "network JSON")->required();
    c_dc->add_flag("--multicast", dc.multicast, "minimum over all destinations");
    c_dc->add_flag("--table", dc.table, "print the per-cut table");
    c_dc->add_option("--node-cap", dc.node_cap, "cut enumeration node cap")->capture_default_str();
    c_dc->add_option("--grid", dc.grid, "pmf grid resolution for function-table networks")->capture_default_str();

    UnfoldArgs uf;
    auto* c_uf = app.add_subcommand("unfold", "capacity of the K-stage time-unfolded network");
    c_uf->add_option("file", uf.file, "network JSON")->required();
    c_uf->add_option("--K", uf.K, "number of stages")->required();

    SimArgs sm;
    auto* c_sm = app.add_subcommand("sim", "Monte Carlo error rate of random relaying");
    c_sm->add_option("file", sm.file, "network JSON")->required();
    c_sm->add_option("--scheme", sm.scheme, "lff or qmf")->capture_default_str();
    c_sm->add_option("--T", sm.T, "block length")->capture_default_str();
    c_sm->add_option("--R", sm.R, "rate in bits per symbol")->capture_default_str();
    c_sm->add_option("--trials", sm.trials, "number of trials")->capture_default_str();
    c_sm->add_option("--seed", sm.seed, "master seed")->capture_default_str();
    c_sm->add_option("--csv", sm.csv, "per-trial CSV output path");
    c_sm->add_option("--threads", sm.threads, "worker threads (0 = all cores)")->capture_default_str();
    c_sm->add_option("--mc-samples", sm.mc_samples, "qmf relay-noise samples per likelihood")->capture_default_str();

    GaussArgs ga;
    auto* c_ga = app.add_subcommand("gauss", "Gaussian bounds and relaying rates");
    c_ga->add_option("file", ga.file, "network JSON")->required();
    c_ga->add_option("--bound", ga.bound, "cutset, df, pdf, halfduplex, lowrate, ergodic or outage")->capture_default_str();
    c_ga->add_flag("--table", ga.table, "print the per-cut table (cutset)");
    c_ga->add_option("--node-cap", ga.node_cap, "cut enumeration node cap")->capture_default_str();
    c_ga->add_option("--trials", ga.trials, "fading draws (ergodic, outage)")->capture_default_str();
    c_ga->add_option("--seed", ga.seed, "master seed")->capture_default_str();
    c_ga->add_option("--fading", ga.fading, "rayleigh or constant")->capture_default_str();
    c_ga->add_option("--kappa", ga.kappa, "outage bracket width")->capture_default_str();
    c_ga->add_option("--rates", ga.rates, "comma-separated rates (outage)")->delimiter(',');
    c_ga->add_option("--out", ga.out, "CSV output path (outage)");

    SurfaceArgs sf;
    auto* c_sf = app.add_subcommand("gap-surface", "decode-forward gap surface of the single relay channel");
    c_sf->add_option("--x-range", sf.x_range, "RD/SD range in dB, lo:hi")->capture_default_str();
    c_sf->add_option("--y-range", sf.y_range, "SR/SD range in dB, lo:hi")->capture_default_str();
    c_sf->add_option("--step", sf.step, "grid step in dB")->capture_default_str();
    c_sf->add_option("--sd-db", sf.sd_db, "direct link SNR in dB")->capture_default_str();
    c_sf->add_option("--out", sf.out, "CSV output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_dc->parsed()) cmd_det_capacity(dc);
        else if (c_uf->parsed()) cmd_unfold(uf);
        else if (c_sm->parsed()) cmd_sim(sm);
        else if (c_ga->parsed()) cmd_gauss(ga);
        else if (c_sf->parsed()) cmd_gap_surface(sf);
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
