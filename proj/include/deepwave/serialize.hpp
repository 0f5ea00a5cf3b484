#pragma once

#include <string>
#include <vector>

#include "deepwave/decay.hpp"
#include "deepwave/grid.hpp"
#include "deepwave/halfplane.hpp"
#include "deepwave/identities.hpp"
#include "deepwave/linearized.hpp"
#include "deepwave/solitary.hpp"
#include "deepwave/steady.hpp"
#include "deepwave/stokes.hpp"

namespace deepwave {

enum class ExportFormat { csv, json };

/// "csv" or "json"; anything else throws invalid_argument.
ExportFormat parse_format(const std::string& s);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// JSON text is compact, keys in a fixed order, doubles in shortest
// round-trip form. CSV has a header row and LF line endings.

std::string export_report(const Profile& p, ExportFormat f);               // csv: x,value
std::string export_report(const ResidualReport& r, ExportFormat f);        // csv: x,residual
std::string export_report(const SurfaceCurve& c, ExportFormat f);          // csv: abscissa,ordinate
std::string export_report(const IdentityReport& r, ExportFormat f);        // csv: name,lhs,rhs,defect,tolerance,passed
std::string export_report(const std::vector<IdentityReport>& r, ExportFormat f);
std::string export_report(const DecayFit& d, ExportFormat f);              // json only
std::string export_report(const CertificateReport& c, ExportFormat f);     // json only
std::string export_report(const ProbeReport& r, ExportFormat f);          // json; csv is one summary row with header
std::string export_report(const std::vector<ProbeReport>& r, ExportFormat f);  // csv summary
std::string export_report(const BranchPoint& p, ExportFormat f);           // json only
std::string export_report(const Branch& b, ExportFormat f);                // csv: mu,amplitude,residual,iterations
std::string export_report(const SchrodingerSpectrum& s, ExportFormat f);   // csv: index,eigenvalue
std::string export_report(const HalfPlaneField& h, ExportFormat f);        // csv long format: x,y,value

/// Fixed-width table for terminals and logs.
std::string identity_table(const std::vector<IdentityReport>& r);

/// Inverse of export_report(Profile, json); bit-exact.
Profile profile_from_json(const std::string& text);

}  // namespace deepwave
