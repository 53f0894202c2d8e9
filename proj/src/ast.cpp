#include "obcheck/ast.hpp"

#include <algorithm>
#include <sstream>

namespace obcheck {

const MethodSig* ClassDecl::find_method(std::string_view method_name) const {
    auto it = std::find_if(methods.begin(), methods.end(),
                           [&](const MethodSig& m) { return m.name == method_name; });
    return it == methods.end() ? nullptr : &*it;
}

const Span& Stmt::span() const {
    return std::visit([](const auto& n) -> const Span& { return n.span; }, node);
}

namespace {

void print_placeholder_args(std::ostream& os, int count) {
    for (int i = 0; i < count; ++i) {
        if (i > 0) os << ", ";
        os << '0';
    }
}

void print_block(std::ostream& os, const std::vector<Stmt>& stmts, int indent);

void print_stmt(std::ostream& os, const Stmt& stmt, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (const auto* decl = std::get_if<VarDecl>(&stmt.node)) {
        os << pad << decl->class_name << ' ' << decl->var_name << " = new " << decl->class_name
           << '(';
        print_placeholder_args(os, decl->ctor_arg_count);
        os << ");\n";
    } else if (const auto* call = std::get_if<MethodCall>(&stmt.node)) {
        os << pad << call->receiver << '.' << call->method << '(';
        print_placeholder_args(os, call->arg_count);
        os << ");\n";
    } else if (const auto* ifs = std::get_if<IfStmt>(&stmt.node)) {
        os << pad << "if (" << ifs->condition << ") {\n";
        print_block(os, ifs->then_block, indent + 1);
        os << pad << '}';
        if (ifs->else_block) {
            os << " else {\n";
            print_block(os, *ifs->else_block, indent + 1);
            os << pad << '}';
        }
        os << '\n';
    } else {
        const auto& loop = std::get<WhileStmt>(stmt.node);
        os << pad << "while (" << loop.condition << ") {\n";
        print_block(os, loop.body, indent + 1);
        os << pad << "}\n";
    }
}

void print_block(std::ostream& os, const std::vector<Stmt>& stmts, int indent) {
    for (const Stmt& stmt : stmts) print_stmt(os, stmt, indent);
}

}  // namespace

std::string to_source(const Program& program) {
    std::ostringstream os;
    for (const ClassDecl& cls : program.classes) {
        os << "class " << cls.name << " {\n";
        for (const MethodSig& sig : cls.methods) {
            os << "  " << sig.return_type << ' ' << sig.name << '(';
            for (int i = 0; i < sig.arity; ++i) {
                if (i > 0) os << ", ";
                os << "int p" << i;
            }
            os << ") {}\n";
        }
        os << "}\n\n";
    }
    os << "main {\n";
    print_block(os, program.main_block, 1);
    os << "}\n";
    return os.str();
}

}  // namespace obcheck
