// kleinlens: classification, invariants, and explicit constructions for
// Klein bottles and projective planes in lens spaces.

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kleinlens/abelian.hpp"
#include "kleinlens/geometry.hpp"
#include "kleinlens/groups.hpp"
#include "kleinlens/lens_core.hpp"
#include "kleinlens/mesh.hpp"
#include "kleinlens/report.hpp"
#include "kleinlens/verify.hpp"

namespace {

using namespace kleinlens;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
    double tolerance = 1e-9;
    std::int64_t cap = 20000;
    ReportFormat format = ReportFormat::Text;
};

geometry::Tolerances tolerances(const GlobalOptions& g) {
    return {g.tolerance, 1e-12};
}

Sign parse_sign(const std::string& text) {
    if (text == "+" || text == "plus") return Sign::Plus;
    if (text == "-" || text == "minus") return Sign::Minus;
    throw CLI::ValidationError("sign must be one of: + - plus minus");
}

int emit(const Report& report, const GlobalOptions& g) {
    std::cout << report.render(g.format);
    return report.all_passed() ? kExitOk : kExitVerificationFailure;
}

int cmd_classify(std::int64_t p, std::int64_t q, const GlobalOptions& g) {
    std::ostringstream echo;
    echo << "classify " << p << " " << q;
    Report report(echo.str());
    report.add("input_p", p);
    report.add("input_q", q);

    const LensSpace space = normalize(p, q);
    report.add("space", space.to_string());

    const EmbeddabilityVerdict verdict = klein_bottle_embeds(space);
    report.add("klein_bottle_embeds", verdict.embeds);
    if (verdict.embeds) {
        report.add("n", *verdict.n);
        report.add("sign", to_string(*verdict.sign));
    }
    report.add("projective_plane_embeds", projective_plane_embeds(space));

    const GluingMatrix gm = heegaard_gluing(space);
    report.add("heegaard_r", gm.r);
    report.add("heegaard_s", gm.s);
    report.add("heegaard_mu1", gm.mu1_image().to_string());
    report.add("heegaard_lambda1", gm.lambda1_image().to_string());
    report.check("bezout", space.p * gm.r + space.q * gm.s == 1);
    report.check("gluing_determinant_-1", gm.det() == -1);
    return emit(report, g);
}

int cmd_filling(std::int64_t n, std::int64_t ell, const GlobalOptions& g) {
    std::ostringstream echo;
    echo << "filling " << n << " " << ell;
    Report report(echo.str());
    report.add("n", n);
    report.add("l", ell);

    const bool primitive = std::gcd(n, ell) == 1;
    report.add("attaching_class_primitive", primitive);
    if (!primitive)
        report.note("attaching class not primitive: not a Dehn filling; "
                    "homology of the quotient still computed");

    // H_1 as the cokernel of 1 -> (2n, l mod 2) in Z + Z_2.
    abelian::IntMatrix rel(1, 2);
    rel.at(0, 0) = 2 * n;
    rel.at(0, 1) = ((ell % 2) + 2) % 2;
    abelian::AbelianGroup ambient;
    ambient.free_rank = 1;
    ambient.torsion = {2};
    const abelian::AbelianGroup h1 = abelian::cokernel(rel, ambient);
    report.add("H1", h1.to_string());
    report.add("H1_cyclic", h1.is_cyclic());
    if (ell % 2 == 0)
        report.note("l is even: H1 has a Z_2 summand, not a lens-space filling");

    if (n >= 1) {
        const groups::Presentation pres = groups::dehn_filling_presentation(n, ell);
        report.add("presentation", pres.to_string());
        const abelian::AbelianGroup ab = groups::abelianization(pres);
        report.add("abelianization", ab.to_string());
        report.check("abelianization_matches_H1", ab == h1);
    }

    report.note("boundary basis: (n, l) in (interval circle, fibre circle); "
                "the filling-torus lambda glues to (1,0)");

    if (n >= 1 && ell != 0) {
        if (4 * n * std::llabs(ell) <= g.cap) {
            const groups::MetacyclicTable table =
                groups::build_metacyclic_table(n, ell, g.cap);
            if (table.ell_normalized())
                report.note("negative l normalized to |l| (isomorphic via v -> v^-1)");
            report.add("group_order", groups::group_order(table));
            report.add("is_abelian", groups::is_abelian(table));
            report.add("is_cyclic", groups::is_cyclic(table));
            report.add("order_of_v", groups::element_order(table, 0, 1));
            report.add("order_of_u", groups::element_order(table, 1, 0));
            const abelian::AbelianGroup table_ab = groups::table_abelianization(table);
            report.add("table_abelianization", table_ab.to_string());
            if (primitive)
                report.check("table_abelianization_matches_H1", table_ab == h1);
        } else {
            std::ostringstream msg;
            msg << "order " << 4 * n * std::llabs(ell) << " exceeds cap " << g.cap
                << "; table-based checks skipped";
            report.note(msg.str());
        }
    }

    if (n != 0 || ell != 0) {
        const groups::TorsionDiagnostic diag = groups::torsion_diagnostic(n, ell, g.cap);
        report.add("torsion_diagnostic", diag.to_string());
        if (diag.verified())
            report.check("torsion_order_verified",
                         *diag.verified_order == diag.claimed_order);
    }
    return emit(report, g);
}

int cmd_embed(std::int64_t n, const std::string& sign_text,
              const std::string& construction, std::uint32_t resolution,
              const std::string& outdir, const GlobalOptions& g) {
    const Sign sign = parse_sign(sign_text);
    std::ostringstream echo;
    echo << "embed " << n << " " << sign_text << " " << construction;
    Report report(echo.str());
    report.add("n", n);
    report.add("sign", to_string(sign));
    report.add("construction", construction);
    const LensSpace space(4 * n, sign == Sign::Plus ? 2 * n + 1 : 2 * n - 1);
    report.add("space", space.to_string());

    const bool want_files = !outdir.empty();
    if (want_files) std::filesystem::create_directories(outdir);
    const auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(outdir) / name).string();
    };

    const geometry::Tolerances tol = tolerances(g);

    if (construction == "lens_model") {
        report.add("resolution", std::int64_t(resolution));
        const geometry::QuotientMesh mesh =
            geometry::klein_lens_embedding(n, sign, resolution, tol);
        const geometry::SeamCheckReport seams = geometry::verify_seams(mesh, tol);
        const std::int64_t chi = geometry::mesh_euler_characteristic(mesh);
        const geometry::InjectivityReport inj =
            geometry::embedded_injectivity_check(mesh, mesh.space, 1e-4);
        report.add("vertices", std::int64_t(mesh.vertices.size()));
        report.add("faces", std::int64_t(mesh.faces.size()));
        report.add("seam_pairs", std::int64_t(mesh.seams.size()));
        report.add("seam_max_residual", seams.max_residual);
        report.check("seam_identities", seams.pass);
        report.add("euler_characteristic", chi);
        report.check("euler_characteristic_zero", chi == 0);
        report.add("injectivity_min_separation", inj.min_separation);
        report.check("injectivity", inj.pass, inj.to_string());
        if (want_files) {
            const geometry::Mesh3 projected = geometry::stereographic_export(
                mesh, geometry::default_projection_pole(), tol);
            geometry::write_obj(out_path("mesh.obj"), projected);
            geometry::write_mesh_metadata(out_path("mesh.meta.txt"), mesh, seams, inj);
            report.add("mesh_file", out_path("mesh.obj"));
            report.add("metadata_file", out_path("mesh.meta.txt"));
        }
    } else if (construction == "seifert") {
        report.note("longitude convention: the filling-torus lambda glues to "
                    "(1,0) on the nuK boundary");
        const geometry::SeifertDescriptor rp2 = geometry::seifert_over_rp2(n);
        const geometry::SeifertDescriptor s2 = geometry::seifert_over_s2(n);
        report.add("fibration_rp2", rp2.to_string());
        report.add("fibration_s2", s2.to_string());
        report.check("rp2_single_singular_fiber", rp2.singular_fiber_orders.size() == 1 &&
                                                       rp2.singular_fiber_orders[0] == n);
        report.check("s2_two_order_2_fibers",
                     s2.singular_fiber_orders == std::vector<std::int64_t>{2, 2});
        // Regular fibre (0,1) pulls back to mu - n*lambda, and (1,0) to lambda.
        report.check("rp2_fiber_identified_with_mu_minus_n_lambda",
                     rp2.fiber_in_filling_basis == std::make_pair<std::int64_t, std::int64_t>(1, -n));
        report.check("s2_fiber_identified_with_lambda",
                     s2.fiber_in_filling_basis == std::make_pair<std::int64_t, std::int64_t>(0, 1));
        const TorusClass ident = geometry::heegaard_identification_from_fibration(n);
        report.add("meridian_identification", ident.to_string());
        const LensSpace named = geometry::lens_from_meridian_image(ident);
        report.add("identified_space", named.to_string());
        report.check("identified_space_has_klein_bottle",
                     klein_bottle_embeds(named).embeds);
        if (want_files) {
            const geometry::NuKModel model;
            geometry::write_curve(out_path("fiber_regular.txt"),
                                  geometry::fiber_through(model, M_PI / 3, 0.5).points);
            geometry::write_curve(out_path("fiber_exceptional_0.txt"),
                                  geometry::fiber_through(model, 0.0, 0.0).points);
            geometry::write_curve(out_path("fiber_exceptional_pi.txt"),
                                  geometry::fiber_through(model, M_PI, 0.0).points);
            report.add("curve_files", outdir);
        }
    } else if (construction == "two_moebius") {
        const geometry::TwoMoebiusReport rep = geometry::two_moebius_construction(n, sign);
        report.add("witness_r", rep.r);
        report.add("witness_s", rep.s);
        report.add("input_class", rep.input.to_string());
        report.add("image_class", rep.image.to_string());
        report.add("expected_class", rep.expected.to_string());
        report.check("moebius_boundary_identity", rep.pass, rep.to_string());
        const geometry::WindingCount winding = geometry::moebius_boundary_winding();
        report.check("moebius_winding_2_1",
                     winding.longitude == 2 && winding.meridian == 1);
        if (want_files) {
            std::vector<C2Point> boundary;
            for (int i = 0; i <= 1024; ++i) {
                const double t = 2.0 * double(i) / 1024.0;
                const double tm = t <= 1.0 ? t : t - 1.0;
                boundary.push_back(geometry::moebius_in_solid_torus(
                    tm, t <= 1.0 ? 1.0 : -1.0));
            }
            geometry::write_curve(out_path("moebius_boundary.txt"), boundary);
            report.add("curve_files", outdir);
        }
    } else if (construction == "handles") {
        const geometry::HandleLayout layout = geometry::handle_layout(n, sign);
        std::ostringstream mu_terms, lambda_terms;
        for (std::size_t i = 0; i < layout.mu_intersections.size(); ++i)
            mu_terms << (i ? "+" : "") << layout.mu_intersections[i];
        for (std::size_t i = 0; i < layout.lambda_intersections.size(); ++i)
            lambda_terms << (i ? "+" : "") << layout.lambda_intersections[i];
        report.add("mu2_intersections", mu_terms.str());
        report.add("lambda2_intersections", lambda_terms.str());
        report.add("second_handle_over_first", layout.second_over_first);
        report.check("single_boundary_curve",
                     geometry::boundary_circle_count(layout.band_slots,
                                                     layout.band_twisted) == 1);
        const TorusClass cls = geometry::handle_boundary_class(layout);
        report.add("boundary_class", cls.to_string());
        const LensSpace named = geometry::lens_from_meridian_image(cls);
        report.add("identified_space", named.to_string());
        report.check("boundary_class_is_mu1",
                     named == space.canonical());
    } else {
        throw CLI::ValidationError(
            "construction must be one of: lens_model seifert two_moebius handles");
    }
    return emit(report, g);
}

int cmd_verify(std::int64_t max_n, std::int64_t max_p, bool inject_fault,
               const GlobalOptions& g) {
    std::ostringstream echo;
    echo << "verify " << max_n << " " << max_p;
    Report report(echo.str());
    report.add("max_n", max_n);
    report.add("max_p", max_p);

    verify::VerifyOptions options;
    options.max_n = max_n;
    options.max_p = max_p;
    options.cap = g.cap;
    options.inject_fault = inject_fault;
    const std::vector<verify::SuiteResult> results = verify::run_verification(options);

    std::size_t total_cases = 0;
    double total_ms = 0;
    for (const verify::SuiteResult& r : results) {
        std::ostringstream detail;
        detail << r.cases << " cases";
        if (!r.pass) detail << "; first counterexample: " << r.first_failure;
        report.check(r.name, r.pass, detail.str());
        total_cases += r.cases;
        total_ms += r.ms;
    }
    report.add("total_cases", std::int64_t(total_cases));
    report.add("runtime_ms", total_ms);
    return emit(report, g);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kleinlens: Klein bottles and projective planes in lens spaces"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--tolerance", global.tolerance,
                   "membership tolerance for geometric predicates")
        ->capture_default_str();
    app.add_option("--cap", global.cap, "order cap for group tables")
        ->capture_default_str();
    std::string format_text = "text";
    app.add_option("--format", format_text, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* classify = app.add_subcommand(
        "classify", "embeddability and Heegaard data of L(p,q)");
    std::int64_t p = 0, q = 0;
    classify->add_option("p", p, "order of the deck group")->required();
    classify->add_option("q", q, "rotation parameter")->required();

    auto* filling = app.add_subcommand(
        "filling", "homology and fundamental group of the Dehn filling (n,l)");
    std::int64_t fn = 0, fl = 0;
    filling->add_option("n", fn, "interval-circle coefficient")->required();
    filling->add_option("l", fl, "fibre-circle coefficient")->required();

    auto* embed = app.add_subcommand(
        "embed", "build and verify one of the explicit constructions");
    std::int64_t en = 1;
    std::string esign = "+", econstruction = "lens_model", eout;
    std::uint32_t eres = 64;
    embed->add_option("n", en, "the space is L(4n, 2n+-1)")->required();
    embed->add_option("sign", esign, "+ or -")->required();
    embed
        ->add_option("construction", econstruction,
                     "lens_model | seifert | two_moebius | handles")
        ->required();
    embed->add_option("resolution", eres, "grid resolution for lens_model");
    embed->add_option("output", eout, "output directory for mesh/curve files");

    auto* verify_cmd =
        app.add_subcommand("verify", "run every module invariant sweep");
    std::int64_t vmax_n = 20, vmax_p = 200;
    bool inject_fault = false;
    verify_cmd->add_option("max_n", vmax_n, "bound for n-indexed sweeps")->required();
    verify_cmd->add_option("max_p", vmax_p, "bound for p-indexed sweeps")->required();
    verify_cmd->add_flag("--inject-fault", inject_fault)->group("");

    try {
        app.parse(argc, argv);
        global.format =
            format_text == "json" ? ReportFormat::Json : ReportFormat::Text;
        if (classify->parsed()) return cmd_classify(p, q, global);
        if (filling->parsed()) return cmd_filling(fn, fl, global);
        if (embed->parsed())
            return cmd_embed(en, esign, econstruction, eres, eout, global);
        if (verify_cmd->parsed())
            return cmd_verify(vmax_n, vmax_p, inject_fault, global);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
}
