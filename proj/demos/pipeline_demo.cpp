// Builds the two-object fixture with a Z/2 action on its hom-set, runs the
// verification pipeline over F_2, and prints the report.

#include "eicat/builders.hpp"
#include "eicat/catfile.hpp"
#include "eicat/pipeline.hpp"

#include <iostream>

int main() {
    using namespace eicat;
    auto cat = fixture("z2orb");
    auto file = parse_category_file(export_category_file(cat, FieldSpec::prime(2)));
    auto report = run_pipeline_file(file, "z2orb (in memory)");
    std::cout << report.text();
    return report.all_positive() ? 0 : 1;
}
