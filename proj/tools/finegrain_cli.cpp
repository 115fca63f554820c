// fgr: command-line front end for the finegrain library.
//
// Exit status: 0 accept / positive answer, 1 reject / negative answer,
// 2 usage, format, shape or size errors.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "finegrain/finegrain.hpp"

namespace fs = std::filesystem;
using namespace fgr;

namespace {

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

struct Globals {
    std::uint64_t prime = Field::kDefaultPrime;
    std::uint64_t seed = 1;
    int max_n = kDefaultLimits.max_vars;

    Field field() const { return Field(prime); }
    Limits limits() const {
        Limits l;
        l.max_vars = max_n;
        return l;
    }
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return in;
}

Formula load_cnf(const std::string& path, const Globals& g) {
    auto in = open_in(path);
    auto f = parse_dimacs(in);
    if (f.num_vars() > g.max_n)
        throw SizeError(std::to_string(f.num_vars()) + " variables exceed --max-n " + std::to_string(g.max_n));
    return f;
}

template <class Read>
auto load(const std::string& path, Read&& read) {
    auto in = open_in(path);
    return read(in);
}

// Writes through `emit` to `path`, or to stdout when path is empty or "-".
template <class Emit>
void save(const std::string& path, Emit&& emit) {
    if (path.empty() || path == "-") {
        emit(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    emit(out);
}

// Summary lines go to stderr when the payload itself goes to stdout.
std::ostream& info(const std::string& out_path) {
    return out_path.empty() || out_path == "-" ? std::cerr : std::cout;
}

TVec parse_tvec(const std::string& s) {
    TVec v{};
    std::istringstream in(s);
    std::string part;
    std::size_t i = 0;
    while (std::getline(in, part, ',')) {
        if (i == 4) throw PreconditionError("--tvec takes four comma-separated counts");
        try {
            std::size_t used = 0;
            const long long x = std::stoll(part, &used);
            if (used != part.size() || x < 0) throw std::invalid_argument(part);
            v[i++] = static_cast<std::size_t>(x);
        } catch (const std::logic_error&) {
            throw PreconditionError("bad --tvec entry '" + part + "'");
        }
    }
    if (i != 4) throw PreconditionError("--tvec takes four comma-separated counts");
    return v;
}

std::string join(const TVec& v) {
    return std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + "," + std::to_string(v[3]);
}

std::string assignment_string(const Assignment& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += "x" + std::to_string(a.scope()[i]) + "=" + (a.bits().get(i) ? "1" : "0") + (i + 1 < a.size() ? " " : "");
    return s;
}

// ---------------------------------------------------------------------------
// reduce

int reduce_ov(const Globals& g, const std::string& cnf, int t, const std::string& out) {
    const Formula f = load_cnf(cnf, g);
    const Formula padded = pad_variables(f, t);
    if (padded.num_vars() != f.num_vars())
        info(out) << "note: padded from " << f.num_vars() << " to " << padded.num_vars() << " variables\n";
    const auto inst = sat_to_tov(padded, t);
    save(out, [&](std::ostream& o) { write_ov(o, inst); });
    info(out) << "parts " << inst.t_parts() << ", sizes";
    for (const auto& p : inst.parts) info(out) << ' ' << p.size();
    info(out) << ", dim " << inst.dim() << '\n';
    return kAccept;
}

int reduce_clique(const Globals& g, const std::string& cnf, const std::string& tvec_s, std::optional<std::size_t> t,
                  bool allow_small_prime, const std::string& out) {
    const Formula f = load_cnf(cnf, g);
    const TVec tvec = parse_tvec(tvec_s);
    const std::size_t sum = tvec[0] + tvec[1] + tvec[2] + tvec[3];
    if (t && *t != sum) throw PreconditionError("--tvec sums to " + std::to_string(sum) + ", not --t " + std::to_string(*t));
    if (f.num_vars() % 4 != 0)
        info(out) << "note: padded from " << f.num_vars() << " to " << pad_variables(f, 4).num_vars() << " variables\n";
    const auto inst = build_clique_instance(f, tvec, g.field(), allow_small_prime);
    save(out, [&](std::ostream& o) { write_clique_instance(o, inst); });
    info(out) << "k " << inst.k << ", p " << inst.field.prime() << ", tvec " << join(tvec) << '\n';
    return kAccept;
}

// ---------------------------------------------------------------------------
// gen

int gen_seed(const std::string& cnf, const Globals& g, double beta, const std::string& tvec_s, std::size_t j0,
             std::size_t j1, const std::string& selector, const std::string& out) {
    const Formula f = load_cnf(cnf, g);
    const auto sel = parse_selector(selector);
    if (!sel) throw PreconditionError("unknown selector '" + selector + "'");
    GeneratorSeed s;
    s.code = encode_formula(f, FormulaClass{f.num_vars(), 3, beta});
    while (s.code.size() % 4) s.code.push_back(false);
    s.tvec = parse_tvec(tvec_s);
    s.t = s.tvec[0] + s.tvec[1] + s.tvec[2] + s.tvec[3];
    s.j0 = j0;
    s.j1 = j1;
    s.selector = *sel;
    save(out, [&](std::ostream& o) { write_seed(o, s); });
    return kAccept;
}

int gen_matrix(const Globals& g, const std::string& seed_path, int n, double beta, const std::string& out) {
    const auto seed = load(seed_path, [](std::istream& in) { return read_seed(in); });
    const Generator gen(n, beta, g.field());
    const auto result = gen(seed);
    if (is_empty_output(result)) {
        info(out) << "empty output (seed does not describe a valid instance)\n";
        return kAccept;
    }
    if (const auto* m = std::get_if<FieldMatrix>(&result)) {
        save(out, [&](std::ostream& o) { write_matrix(o, *m); });
        info(out) << selector_name(seed.selector) << ": " << m->rows() << "x" << m->cols() << " matrix\n";
    } else {
        const auto& t = std::get<Tensor3>(result);
        save(out, [&](std::ostream& o) { write_tensor(o, t); });
        info(out) << selector_name(seed.selector) << ": " << t.d1() << "x" << t.d2() << "x" << t.d3() << " tensor\n";
    }
    return kAccept;
}

SliceProver make_prover(const std::string& flavor, std::optional<std::size_t> rank, std::mt19937_64& rng) {
    if (flavor == "sparse") return [](const FieldMatrix& m, const std::string&) { return prove_trivial(m, Flavor::Sparse); };
    if (flavor == "rank") return [](const FieldMatrix& m, const std::string&) { return prove_trivial(m, Flavor::Rank); };
    return [rank, &rng](const FieldMatrix& m, const std::string&) {
        const std::size_t cap = std::min(m.rows(), m.cols());
        return prove_split(m, std::min(cap, rank.value_or(rng() % (cap + 1))), rng);
    };
}

void write_cert(const fs::path& p, const RigidityCertificate& c, std::size_t k) {
    save(p.string(), [&](std::ostream& o) { write_rigidity_certificate(o, c, k, k); });
}

int gen_certs(const Globals& g, const std::string& inst_path, const std::string& dir, const std::string& mode,
              const std::string& flavor, std::optional<std::size_t> rank, std::optional<std::size_t> tensor_rank) {
    const auto inst = load(inst_path, [](std::istream& in) { return read_clique_instance(in); });
    std::mt19937_64 rng(g.seed);
    const auto prover = make_prover(flavor, rank, rng);
    fs::create_directories(dir);
    const fs::path d(dir);
    std::size_t files = 0;
    if (mode == "rigidity") {
        for (const auto& [key, pair] : prove_rigidity_certs(inst, prover)) {
            const std::string stem = "rig_" + std::to_string(key.first) + "_" + std::to_string(key.second);
            write_cert(d / (stem + "_M.cert"), pair.first, inst.k);
            write_cert(d / (stem + "_L.cert"), pair.second, inst.k);
            files += 2;
        }
    } else {
        const auto tc = tensor_rank ? prove_tensor_split(inst.A[0], *tensor_rank, rng) : prove_fibers(inst.A[0]);
        save((d / "tensor_A0.cert").string(), [&](std::ostream& o) { write_tensor_certificate(o, tc, inst.k); });
        ++files;
        for (const auto& [j0, certs] : prove_tensor_certs(inst, prover)) {
            const std::string stem = "tr_" + std::to_string(j0);
            write_cert(d / (stem + "_M.cert"), certs[0], inst.k);
            write_cert(d / (stem + "_L.cert"), certs[1], inst.k);
            write_cert(d / (stem + "_T.cert"), certs[2], inst.k);
            files += 3;
        }
    }
    std::cout << "wrote " << files << " " << mode << " certificate files to " << dir << '\n';
    return kAccept;
}

// ---------------------------------------------------------------------------
// verify

int verify_unsat(const Globals& g, const std::string& cnf, const std::string& circ, bool primed, bool brute_check) {
    const Formula f = load_cnf(cnf, g);
    const auto c = load(circ, [](std::istream& in) { return read_monotone_circuit(in); });
    const auto inst = primed ? build_primed_instance(f) : build_separation_instance(f);
    if (c.num_inputs() > inst.ones_side.dim)
        throw ShapeError("circuit reads " + std::to_string(c.num_inputs()) + " inputs, instance has " +
                         std::to_string(inst.ones_side.dim));
    const auto wide = c.widened(inst.ones_side.dim);
    std::optional<std::string> failure;
    for (std::size_t i = 0; i < inst.ones_side.size() && !failure; ++i)
        if (!wide.eval(inst.ones_side.vectors[i]))
            failure = "outputs 0 on A-side vector " + std::to_string(i) + " (" + inst.ones_side.vectors[i].to_string() + ")";
    for (std::size_t i = 0; i < inst.zeros_side.size() && !failure; ++i)
        if (wide.eval(inst.zeros_side.vectors[i]))
            failure = "outputs 1 on complemented B-side vector " + std::to_string(i) + " (" +
                      inst.zeros_side.vectors[i].to_string() + ")";
    const bool accept = !failure;
    if (accept != verify_unsat_certificate(f, c, primed ? CertificateArity::Primed : CertificateArity::Clauses))
        throw Error("internal disagreement with the library verifier");
    if (brute_check) {
        const bool sat = brute_sat(f, g.limits()).has_value();
        std::cout << "brute: " << (sat ? "SAT" : "UNSAT") << '\n';
        if (accept && sat) {
            std::cout << "MISMATCH: certificate accepted for a satisfiable formula\n";
            return kReject;
        }
    }
    if (accept) {
        std::cout << "ACCEPT: circuit separates, formula is unsatisfiable\n";
        return kAccept;
    }
    std::cout << "REJECT: circuit " << *failure << '\n';
    return kReject;
}

int verify_tov(const Globals& g, const std::string& ov, const std::string& circ, bool brute_check) {
    const auto inst = load(ov, [](std::istream& in) { return read_ov(in); });
    const auto c = load(circ, [](std::istream& in) { return read_thr_circuit(in); });
    const bool accept = verify_tov_certificate(inst, c);
    if (brute_check) {
        const auto r = brute_ov(inst, g.limits());
        std::cout << "brute: " << (r.found ? "orthogonal tuple present" : "no orthogonal tuple") << '\n';
        if (accept && r.found) {
            std::cout << "MISMATCH: certificate accepted with an orthogonal tuple present\n";
            return kReject;
        }
    }
    if (accept) {
        std::cout << "ACCEPT: no orthogonal " << inst.t_parts() << "-tuple\n";
        return kAccept;
    }
    ThrCircuit wide = c;
    wide.num_vars = inst.dim();
    for (std::size_t p = 0; p < inst.t_parts(); ++p)
        for (std::size_t i = 0; i < inst.parts[p].size(); ++i)
            if (eval_thr_circuit(wide, inst.parts[p].vectors[i].complement())) {
                std::cout << "REJECT: circuit outputs 1 on the complement of part " << p << " vector " << i << '\n';
                return kReject;
            }
    std::cout << "REJECT\n";
    return kReject;
}

RigidityCertificate load_slice_cert(const fs::path& p, const Field& f, std::size_t k) {
    auto in = open_in(p.string());
    const auto s = read_rigidity_certificate(in, f);
    if (s.rows != k || s.cols != k)
        throw ShapeError(p.filename().string() + " is " + std::to_string(s.rows) + "x" + std::to_string(s.cols) +
                         ", slices are " + std::to_string(k) + "x" + std::to_string(k));
    return s.cert;
}

int verify_cliquecount(const std::string& inst_path, const std::string& dir, std::string mode,
                       bool brute_check) {
    const auto inst = load(inst_path, [](std::istream& in) { return read_clique_instance(in); });
    const fs::path d(dir);
    if (!fs::is_directory(d)) throw Error("'" + dir + "' is not a directory");
    if (mode == "auto") mode = fs::exists(d / "tensor_A0.cert") ? "tensor" : "rigidity";
    const std::size_t k = inst.k;
    Field::Elem r = 0;
    try {
        if (mode == "rigidity") {
            RigidityCertMap certs;
            for (std::size_t j0 = 0; j0 < k; ++j0)
                for (std::size_t j1 = 0; j1 < k; ++j1) {
                    const std::string stem = "rig_" + std::to_string(j0) + "_" + std::to_string(j1);
                    if (!fs::exists(d / (stem + "_M.cert")) || !fs::exists(d / (stem + "_L.cert"))) continue;
                    certs[{j0, j1}] = {load_slice_cert(d / (stem + "_M.cert"), inst.field, k),
                                       load_slice_cert(d / (stem + "_L.cert"), inst.field, k)};
                }
            r = compute_R_rigidity(inst, certs);
        } else {
            std::size_t tk = 0;
            auto in = open_in((d / "tensor_A0.cert").string());
            const auto tc = read_tensor_certificate(in, inst.field, &tk);
            if (tk != k) throw ShapeError("tensor certificate is for k = " + std::to_string(tk));
            TensorCertMap certs;
            for (std::size_t j0 = 0; j0 < k; ++j0) {
                const std::string stem = "tr_" + std::to_string(j0);
                if (!fs::exists(d / (stem + "_M.cert")) || !fs::exists(d / (stem + "_L.cert")) ||
                    !fs::exists(d / (stem + "_T.cert")))
                    continue;
                certs[j0] = {load_slice_cert(d / (stem + "_M.cert"), inst.field, k),
                             load_slice_cert(d / (stem + "_L.cert"), inst.field, k),
                             load_slice_cert(d / (stem + "_T.cert"), inst.field, k)};
            }
            r = compute_R_tensor(inst, tc, certs);
        }
    } catch (const CertificateError& e) {
        std::cout << "REJECT: " << e.what() << '\n';
        return kReject;
    }
    if (brute_check) {
        const auto b = brute_clique_R(inst);
        if (b.mod_p != r) {
            std::cout << "R=" << r << " MISMATCH brute=" << b.mod_p << '\n';
            return kReject;
        }
        std::cout << "R=" << r << " OK\n";
        return kAccept;
    }
    std::cout << "R=" << r << '\n';
    return kAccept;
}

int verify_factors(const std::string& target_path, const std::string& factors_path) {
    auto in = open_in(target_path);
    detail::TokenReader tr(in);
    const bool is_matrix = tr.peek() == "mat";
    auto fin = open_in(factors_path);
    detail::TokenReader fr(fin);
    FactorCheck check;
    std::size_t count = 0;
    if (is_matrix) {
        const auto m = read_matrix(tr);
        tr.expect_end();
        const auto f = read_matrix_factors(fr, m.field());
        fr.expect_end();
        count = f.size();
        check = verify_matrix_factors(m, f, {});
    } else {
        const auto t = read_tensor(tr);
        tr.expect_end();
        const auto f = read_tensor_factors(fr, t.field());
        fr.expect_end();
        count = f.size();
        check = verify_tensor_factors(t, f);
    }
    if (check) {
        std::cout << "ACCEPT: " << count << " factors reconstruct the " << (is_matrix ? "matrix" : "tensor") << '\n';
        return kAccept;
    }
    std::cout << "REJECT: reconstruction differs in " << check.residue << " entries\n";
    return kReject;
}

// ---------------------------------------------------------------------------
// solve

int solve_sat(const Globals& g, const std::string& cnf) {
    const auto f = load_cnf(cnf, g);
    if (const auto a = brute_sat(f, g.limits())) {
        std::cout << "SAT " << assignment_string(*a) << '\n';
        return kAccept;
    }
    std::cout << "UNSAT\n";
    return kReject;
}

int solve_max3sat(const Globals& g, const std::string& cnf, std::size_t t, bool via_cliques) {
    const auto f = load_cnf(cnf, g);
    const bool yes = via_cliques ? max3sat_via_cliques(f, t, g.limits()) : brute_max3sat_exact(f, t, g.limits());
    std::cout << (yes ? "YES" : "NO") << ": exactly " << t << " of " << f.num_clauses() << " clauses "
              << (yes ? "can" : "cannot") << " be satisfied\n";
    return yes ? kAccept : kReject;
}

int solve_ov(const Globals& g, const std::string& path) {
    const auto inst = load(path, [](std::istream& in) { return read_ov(in); });
    const auto r = brute_ov(inst, g.limits());
    if (!r.found) {
        std::cout << "NONE: no orthogonal tuple\n";
        return kReject;
    }
    std::cout << "FOUND";
    for (auto i : r.witness) std::cout << ' ' << i;
    std::cout << '\n';
    return kAccept;
}

int solve_clique(const std::string& path) {
    const auto inst = load(path, [](std::istream& in) { return read_clique_instance(in); });
    const auto r = brute_clique_R(inst);
    std::cout << "R=" << r.exact << " (mod p: " << r.mod_p << ")\n";
    if (const auto c = find_clique(inst)) {
        std::cout << "clique " << (*c)[0] << ' ' << (*c)[1] << ' ' << (*c)[2] << ' ' << (*c)[3] << '\n';
        return kAccept;
    }
    std::cout << "no clique\n";
    return kReject;
}

// ---------------------------------------------------------------------------
// check-regime

int check_regime_cmd(const RegimeParams& p, const std::string& which_s) {
    Regime which = Regime::Tradeoff;
    bool found = false;
    for (auto r : {Regime::Tradeoff, Regime::Canonical, Regime::WeakenedRigidity, Regime::SuperlinearRank})
        if (which_s == regime_name(r)) {
            which = r;
            found = true;
        }
    if (!found) throw PreconditionError("unknown regime '" + which_s + "'");
    const auto rep = check_regime(p, which);
    for (const auto& c : rep.checks) {
        std::printf("%-36s %.6f <= %.6f  margin %+.6f  %s\n", c.name.c_str(), c.lhs, c.rhs, c.margin(),
                    c.holds() ? "ok" : "violated");
    }
    if (rep.time_exponent) std::printf("time exponent (base 2^n): %.6f\n", *rep.time_exponent);
    if (rep.rs_exponent) std::printf("r*s exponent (base k): %.6f\n", *rep.rs_exponent);
    if (rep.rigidity_exponent) std::printf("rigidity exponent (base k): %.6f\n", *rep.rigidity_exponent);
    std::printf("%s\n", rep.passes() ? "PASS" : "FAIL");
    return rep.passes() ? kAccept : kReject;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fgr: reductions, certificate verifiers and exhaustive oracles"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--prime", g.prime, "field prime for generated instances")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for all randomness")->capture_default_str();
    app.add_option("--max-n", g.max_n, "largest variable count accepted for exhaustive work")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    std::function<int()> action;
    std::string in1, in2, out;

    // reduce
    auto* reduce = app.add_subcommand("reduce", "reduce a CNF formula");
    reduce->require_subcommand(1);
    int tov_t = 3;
    std::string tvec = "0,0,0,0";
    std::optional<std::size_t> clique_t;
    bool allow_small = false;
    auto* r_ov = reduce->add_subcommand("ov", "SAT -> orthogonal vectors (2 parts)");
    r_ov->add_option("cnf", in1)->required();
    r_ov->add_option("-o,--output", out, "output file (default stdout)");
    r_ov->callback([&] { action = [&] { return reduce_ov(g, in1, 2, out); }; });
    auto* r_tov = reduce->add_subcommand("tov", "SAT -> t-OV");
    r_tov->add_option("cnf", in1)->required();
    r_tov->add_option("--t", tov_t, "number of parts")->capture_default_str()->check(CLI::Range(2, 64));
    r_tov->add_option("-o,--output", out);
    r_tov->callback([&] { action = [&] { return reduce_ov(g, in1, tov_t, out); }; });
    auto* r_cl = reduce->add_subcommand("clique", "exact MAX-3-SAT tuple -> clique instance");
    r_cl->add_option("cnf", in1)->required();
    r_cl->add_option("--tvec", tvec, "t0,t1,t2,t3")->required();
    r_cl->add_option("--t", clique_t, "total, checked against --tvec");
    r_cl->add_flag("--allow-small-prime", allow_small, "skip the p > k^4 requirement");
    r_cl->add_option("-o,--output", out);
    r_cl->callback([&] { action = [&] { return reduce_clique(g, in1, tvec, clique_t, allow_small, out); }; });

    // gen
    auto* gen = app.add_subcommand("gen", "generator outputs and honest certificates");
    gen->require_subcommand(1);
    int gen_n = 4;
    double beta = 1.0;
    std::size_t j0 = 0, j1 = 0;
    std::string selector = "rig-M", mode = "rigidity", flavor = "sparse";
    std::optional<std::size_t> rank, tensor_rank;
    auto* g_seed = gen->add_subcommand("seed", "encode a formula and indices as a generator seed");
    g_seed->add_option("cnf", in1)->required();
    g_seed->add_option("--beta", beta, "clause density bound of the class")->capture_default_str();
    g_seed->add_option("--tvec", tvec)->required();
    g_seed->add_option("--j0", j0)->capture_default_str();
    g_seed->add_option("--j1", j1)->capture_default_str();
    g_seed->add_option("--selector", selector, "rig-M rig-L tr-M tr-L tr-T tensor matmul")->capture_default_str();
    g_seed->add_option("-o,--output", out);
    g_seed->callback([&] { action = [&] { return gen_seed(in1, g, beta, tvec, j0, j1, selector, out); }; });
    auto* g_mat = gen->add_subcommand("matrix", "run the generator on a seed file");
    g_mat->add_option("seed", in1)->required();
    g_mat->add_option("--n", gen_n, "variables of the formula class")->required();
    g_mat->add_option("--beta", beta)->capture_default_str();
    g_mat->add_option("-o,--output", out);
    g_mat->callback([&] { action = [&] { return gen_matrix(g, in1, gen_n, beta, out); }; });
    auto* g_certs = gen->add_subcommand("certs", "write honest certificates for an instance");
    g_certs->add_option("instance", in1)->required();
    g_certs->add_option("dir", in2)->required();
    g_certs->add_option("--mode", mode)->capture_default_str()->check(CLI::IsMember({"rigidity", "tensor"}));
    g_certs->add_option("--flavor", flavor)->capture_default_str()->check(CLI::IsMember({"sparse", "rank", "split"}));
    g_certs->add_option("--rank", rank, "low-rank part for --flavor split (default random)");
    g_certs->add_option("--tensor-rank", tensor_rank, "split the A0 certificate after this many random triples");
    g_certs->callback([&] { action = [&] { return gen_certs(g, in1, in2, mode, flavor, rank, tensor_rank); }; });

    // verify
    auto* verify = app.add_subcommand("verify", "check a certificate");
    verify->require_subcommand(1);
    bool primed = false, brute_check = false;
    std::string count_mode = "auto";
    auto* v_unsat = verify->add_subcommand("unsat", "monotone circuit separating the reduction's vector sets");
    v_unsat->add_option("cnf", in1)->required();
    v_unsat->add_option("circuit", in2)->required();
    v_unsat->add_flag("--primed", primed, "circuit reads code bits followed by clause bits");
    v_unsat->add_flag("--brute-check", brute_check, "cross-check with exhaustive SAT");
    v_unsat->callback([&] { action = [&] { return verify_unsat(g, in1, in2, primed, brute_check); }; });
    auto* v_tov = verify->add_subcommand("tov", "threshold circuit certifying no orthogonal tuple");
    v_tov->add_option("ov", in1)->required();
    v_tov->add_option("circuit", in2)->required();
    v_tov->add_flag("--brute-check", brute_check, "cross-check with exhaustive t-OV");
    v_tov->callback([&] { action = [&] { return verify_tov(g, in1, in2, brute_check); }; });
    auto* v_cc = verify->add_subcommand("cliquecount", "clique count through certificates");
    v_cc->add_option("instance", in1)->required();
    v_cc->add_option("certs", in2, "certificate directory")->required();
    v_cc->add_option("--mode", count_mode)->capture_default_str()->check(CLI::IsMember({"auto", "rigidity", "tensor"}));
    v_cc->add_flag("--brute-check", brute_check, "compare with the direct k^4 sum");
    v_cc->callback([&] { action = [&] { return verify_cliquecount(in1, in2, count_mode, brute_check); }; });
    auto* v_fac = verify->add_subcommand("factors", "rank-one factors reconstructing a matrix or tensor");
    v_fac->add_option("target", in1)->required();
    v_fac->add_option("factors", in2)->required();
    v_fac->callback([&] { action = [&] { return verify_factors(in1, in2); }; });

    // solve
    auto* solve = app.add_subcommand("solve", "exhaustive oracles");
    solve->require_subcommand(1);
    std::size_t max_t = 0;
    bool via_cliques = false;
    auto* s_sat = solve->add_subcommand("sat");
    s_sat->add_option("cnf", in1)->required();
    s_sat->callback([&] { action = [&] { return solve_sat(g, in1); }; });
    auto* s_max = solve->add_subcommand("max3sat", "can exactly t clauses be satisfied");
    s_max->add_option("cnf", in1)->required();
    s_max->add_option("--t", max_t)->required();
    s_max->add_flag("--via-cliques", via_cliques, "decide through clique counts");
    s_max->callback([&] { action = [&] { return solve_max3sat(g, in1, max_t, via_cliques); }; });
    auto* s_ov = solve->add_subcommand("ov");
    s_ov->add_option("instance", in1)->required();
    s_ov->callback([&] { action = [&] { return solve_ov(g, in1); }; });
    auto* s_cl = solve->add_subcommand("clique");
    s_cl->add_option("instance", in1)->required();
    s_cl->callback([&] { action = [&] { return solve_clique(in1); }; });

    // check-regime
    RegimeParams params;
    std::string regime = "tradeoff";
    auto* cr = app.add_subcommand("check-regime", "evaluate the parameter inequalities");
    cr->add_option("--alpha", params.alpha)->capture_default_str();
    cr->add_option("--beta", params.beta)->capture_default_str();
    cr->add_option("--delta", params.delta)->capture_default_str();
    cr->add_option("--omega", params.omega)->capture_default_str();
    cr->add_option("--regime", regime, "tradeoff canonical weakened-rigidity superlinear-rank")->capture_default_str();
    cr->callback([&] { action = [&] { return check_regime_cmd(params, regime); }; });

    // Global flags may also follow a subcommand.
    std::function<void(CLI::App*)> fall = [&](CLI::App* a) {
        for (auto* sub : a->get_subcommands({})) {
            sub->fallthrough();
            fall(sub);
        }
    };
    fall(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        (void)g.field();
        return action();
    } catch (const fgr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
