#include "obcheck/usage.hpp"

#include <algorithm>
#include <map>

namespace obcheck {

UsageNode make_call(CallEvent event) { return UsageNode{CallNode{std::move(event)}}; }

UsageNode make_seq(std::vector<UsageNode> children) {
    return UsageNode{SeqNode{std::move(children)}};
}

UsageNode make_branch(UsageNode then_tree, std::optional<UsageNode> else_tree, Span span) {
    BranchNode node;
    node.then_tree = std::make_unique<UsageNode>(std::move(then_tree));
    if (else_tree) node.else_tree = std::make_unique<UsageNode>(std::move(*else_tree));
    node.span = std::move(span);
    return UsageNode{std::move(node)};
}

UsageNode make_loop(UsageNode body, Span span) {
    LoopNode node;
    node.body = std::make_unique<UsageNode>(std::move(body));
    node.span = std::move(span);
    return UsageNode{std::move(node)};
}

namespace {

void collect_calls(const UsageNode& tree, std::vector<CallEvent>& out) {
    if (const auto* seq = std::get_if<SeqNode>(&tree.node)) {
        for (const UsageNode& child : seq->children) collect_calls(child, out);
    } else if (const auto* call = std::get_if<CallNode>(&tree.node)) {
        out.push_back(call->event);
    } else if (const auto* branch = std::get_if<BranchNode>(&tree.node)) {
        collect_calls(*branch->then_tree, out);
        if (branch->else_tree) collect_calls(*branch->else_tree, out);
    } else {
        collect_calls(*std::get<LoopNode>(tree.node).body, out);
    }
}

struct DeclInfo {
    std::string class_name;
    Span span;
    int position = 0;  // pre-order statement index
};

// Pre-order statement numbering keeps "declared before use" well defined
// across nested blocks; the projection below counts the same way.
void index_decls(const std::vector<Stmt>& stmts, int& position,
                 std::map<std::string, DeclInfo>& decls, std::vector<std::string>& order) {
    for (const Stmt& stmt : stmts) {
        const int idx = position++;
        if (const auto* decl = std::get_if<VarDecl>(&stmt.node)) {
            auto [it, inserted] =
                decls.emplace(decl->var_name, DeclInfo{decl->class_name, decl->span, idx});
            if (!inserted)
                throw ExtractError("duplicate declaration of '" + decl->var_name + "'",
                                   decl->span);
            order.push_back(decl->var_name);
        } else if (const auto* ifs = std::get_if<IfStmt>(&stmt.node)) {
            index_decls(ifs->then_block, position, decls, order);
            if (ifs->else_block) index_decls(*ifs->else_block, position, decls, order);
        } else if (const auto* loop = std::get_if<WhileStmt>(&stmt.node)) {
            index_decls(loop->body, position, decls, order);
        }
    }
}

UsageNode project_block(const std::vector<Stmt>& stmts, const std::string& var, int decl_pos,
                        int& position) {
    std::vector<UsageNode> children;
    for (const Stmt& stmt : stmts) {
        const int idx = position++;
        if (const auto* call = std::get_if<MethodCall>(&stmt.node)) {
            if (call->receiver == var && idx > decl_pos)
                children.push_back(
                    make_call(CallEvent{call->method, call->arg_count, call->span}));
        } else if (const auto* ifs = std::get_if<IfStmt>(&stmt.node)) {
            UsageNode then_tree = project_block(ifs->then_block, var, decl_pos, position);
            std::optional<UsageNode> else_tree;
            if (ifs->else_block)
                else_tree = project_block(*ifs->else_block, var, decl_pos, position);
            children.push_back(
                make_branch(std::move(then_tree), std::move(else_tree), ifs->span));
        } else if (const auto* loop = std::get_if<WhileStmt>(&stmt.node)) {
            children.push_back(
                make_loop(project_block(loop->body, var, decl_pos, position), loop->span));
        }
    }
    return make_seq(std::move(children));
}

void collect_orphans(const std::vector<Stmt>& stmts, int& position,
                     const std::map<std::string, DeclInfo>& decls,
                     std::vector<std::pair<std::string, CallEvent>>& orphans) {
    for (const Stmt& stmt : stmts) {
        const int idx = position++;
        if (const auto* call = std::get_if<MethodCall>(&stmt.node)) {
            auto it = decls.find(call->receiver);
            if (it == decls.end() || idx < it->second.position)
                orphans.emplace_back(call->receiver,
                                     CallEvent{call->method, call->arg_count, call->span});
        } else if (const auto* ifs = std::get_if<IfStmt>(&stmt.node)) {
            collect_orphans(ifs->then_block, position, decls, orphans);
            if (ifs->else_block) collect_orphans(*ifs->else_block, position, decls, orphans);
        } else if (const auto* loop = std::get_if<WhileStmt>(&stmt.node)) {
            collect_orphans(loop->body, position, decls, orphans);
        }
    }
}

}  // namespace

std::vector<CallEvent> flatten_calls(const UsageNode& tree) {
    std::vector<CallEvent> out;
    collect_calls(tree, out);
    return out;
}

const ObjectUsage* UsageSet::find(std::string_view var_name) const {
    auto it = std::find_if(usages.begin(), usages.end(),
                           [&](const ObjectUsage& u) { return u.var_name == var_name; });
    return it == usages.end() ? nullptr : &*it;
}

UsageSet extract_usages(const Program& program) {
    UsageSet result;
    result.source_file = program.source_file;

    std::map<std::string, DeclInfo> decls;
    std::vector<std::string> order;
    int position = 0;
    index_decls(program.main_block, position, decls, order);

    for (const std::string& var : order) {
        const DeclInfo& info = decls.at(var);
        int walk = 0;
        result.usages.push_back(ObjectUsage{
            var, info.class_name, info.span,
            project_block(program.main_block, var, info.position, walk)});
    }

    position = 0;
    collect_orphans(program.main_block, position, decls, result.orphan_calls);
    return result;
}

const ClassDecl* lookup_class(const Program& program, std::string_view name) {
    auto it = std::find_if(program.classes.begin(), program.classes.end(),
                           [&](const ClassDecl& c) { return c.name == name; });
    return it == program.classes.end() ? nullptr : &*it;
}

}  // namespace obcheck
