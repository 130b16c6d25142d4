#include "ontoforge/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>

#include "ontoforge/environment.hpp"
#include "ontoforge/importer.hpp"
#include "ontoforge/polyglot.hpp"
#include "ontoforge/reasoner.hpp"
#include "ontoforge/serializer.hpp"
#include "ontoforge/testkit.hpp"

namespace ontoforge::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool use_color(std::ostream& err) {
  if (const char* v = std::getenv("ONTOFORGE_COLOR")) return std::string_view(v) == "1";
  return &err == &std::cerr && ::isatty(STDERR_FILENO);
}

class Reporter {
 public:
  explicit Reporter(std::ostream& err) : err_(err), color_(use_color(err)) {}

  void print(Diagnostic::Severity severity, const std::optional<SourceLocation>& where,
             const std::string& message) {
    if (where) err_ << where->str() << ": ";
    std::string_view label = to_string(severity);
    if (color_) {
      const char* code = severity == Diagnostic::Severity::Error     ? "\033[1;31m"
                         : severity == Diagnostic::Severity::Warning ? "\033[1;33m"
                                                                     : "\033[1;36m";
      err_ << code << label << "\033[0m";
    } else {
      err_ << label;
    }
    err_ << ": " << message << "\n";
  }

  void flush(const Session& session) {
    for (const auto& env : session.loaded()) {
      const auto& diags = env->diagnostics();
      for (std::size_t i = printed_[env.get()]; i < diags.size(); ++i) {
        print(diags[i].severity, diags[i].where, diags[i].message);
      }
      printed_[env.get()] = diags.size();
    }
  }

 private:
  std::ostream& err_;
  bool color_;
  std::map<const Environment*, std::size_t> printed_;
};

struct Common {
  std::vector<std::string> src;
  std::string ns;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--src", c.src, "source root (repeatable)")->required();
  cmd->add_option("--ns", c.ns, "namespace to load");
}

std::vector<fs::path> roots(const Common& c) { return {c.src.begin(), c.src.end()}; }

std::string pick_namespace(const Session& session, const Common& c) {
  if (!c.ns.empty()) return c.ns;
  auto all = session.discover();
  if (all.size() != 1) {
    throw UsageError("--ns is required: the source roots hold " + std::to_string(all.size()) + " namespaces");
  }
  return all.front();
}

std::optional<std::string> annotation_text(const Environment& env, const Iri& subject, const Entity& property) {
  std::vector<const AnnotationValue*> found;
  for (const Ontology* ont : env.imports_closure()) {
    for (const auto& axiom : ont->axioms()) {
      const auto* a = std::get_if<AnnotationAssertion>(&axiom);
      if (a && a->subject == subject && a->property == property) found.push_back(&a->value);
    }
  }
  if (found.empty()) return std::nullopt;
  auto rank = [](const AnnotationValue* v) { return !v->lang ? 0 : *v->lang == "en" ? 1 : 2; };
  std::stable_sort(found.begin(), found.end(), [&](const AnnotationValue* a, const AnnotationValue* b) {
    return rank(a) < rank(b);
  });
  return found.front()->text;
}

std::string short_class(const Ontology& ont, const Entity& e) {
  return shorten(ont, e.iri).value_or("<" + e.iri.str() + ">");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ontoforge: compile, check and test ontology sources"};
  app.name("ontoforge");
  app.require_subcommand(1);

  Common compile_opts, check_opts, test_opts, classify_opts, skeleton_opts, apply_opts, save_opts, mcheck_opts,
      doc_opts;
  std::vector<std::string> formats;
  std::string out_dir, lang, out_file, in_file, memo_file, memo_source, doc_name;

  auto* compile = app.add_subcommand("compile", "write OMN and/or functional syntax");
  add_common(compile, compile_opts);
  compile->add_option("--format", formats, "omn or ofn (repeatable; default both)")
      ->check(CLI::IsMember({"omn", "ofn"}));
  compile->add_option("--out", out_dir, "output directory")->required();

  auto* check = app.add_subcommand("check", "evaluate sources and report diagnostics");
  add_common(check, check_opts);

  auto* test = app.add_subcommand("test", "run deftest blocks");
  add_common(test, test_opts);

  auto* classify = app.add_subcommand("classify", "print direct superclasses of every class");
  add_common(classify, classify_opts);

  auto* labels = app.add_subcommand("labels", "translation resources");
  labels->require_subcommand(1);
  auto* skeleton = labels->add_subcommand("skeleton", "write an empty properties file");
  add_common(skeleton, skeleton_opts);
  skeleton->add_option("--lang", lang)->required();
  skeleton->add_option("--out", out_file, "output file");
  auto* apply = labels->add_subcommand("apply", "apply a properties file and report coverage");
  add_common(apply, apply_opts);
  apply->add_option("--lang", lang)->required();
  apply->add_option("--file", in_file)->required();

  auto* memorise = app.add_subcommand("memorise", "identifier snapshots of external ontologies");
  memorise->require_subcommand(1);
  auto* msave = memorise->add_subcommand("save", "write a memo file");
  add_common(msave, save_opts);
  msave->add_option("--file", memo_file)->required();
  msave->add_option("--source", memo_source, "external ontology IRI");
  auto* mcheck = memorise->add_subcommand("check", "compare against a memo file");
  add_common(mcheck, mcheck_opts);
  mcheck->add_option("--file", memo_file)->required();
  mcheck->add_option("--source", memo_source, "external ontology IRI");

  auto* doc = app.add_subcommand("doc", "print the label and comment of an entity");
  add_common(doc, doc_opts);
  doc->add_option("--name", doc_name)->required();

  std::vector<const char*> argv{"ontoforge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kCompileError;
  }

  Reporter reporter(err);
  const Common* common = nullptr;
  for (const auto& [cmd, opts] : std::initializer_list<std::pair<CLI::App*, const Common*>>{
           {compile, &compile_opts}, {check, &check_opts}, {test, &test_opts}, {classify, &classify_opts},
           {skeleton, &skeleton_opts}, {apply, &apply_opts}, {msave, &save_opts}, {mcheck, &mcheck_opts},
           {doc, &doc_opts}}) {
    if (cmd->parsed()) common = opts;
  }
  Session session(roots(*common));

  try {
    std::string ns = pick_namespace(session, *common);
    auto env = session.load(ns);
    reporter.flush(session);

    if (compile->parsed()) {
      if (formats.empty()) formats = {"omn", "ofn"};
      fs::create_directories(out_dir);
      for (const auto& format : formats) {
        fs::path path = fs::path(out_dir) / (ns + "." + format);
        write_file(path, format == "omn" ? render_omn(env->ontology()) : render_functional(env->ontology()));
        out << "wrote " << path.string() << "\n";
      }
      return kOk;
    }

    if (check->parsed()) {
      out << ns << ": " << env->ontology().size() << " axioms, " << env->local_names().size()
          << " definitions\n";
      return kOk;
    }

    if (test->parsed()) {
      auto report = testkit::run_tests(*env);
      reporter.flush(session);
      out << testkit::format_tap(report);
      auto taxonomy = el::classify(env->imports_closure());
      auto coherence = taxonomy.coherence_report();
      if (!coherence.coherent) {
        std::string names;
        for (const auto& e : coherence.unsatisfiable) {
          names += (names.empty() ? "" : ", ") + short_class(env->ontology(), e);
        }
        out << "# incoherent: " << names << "\n";
      }
      return report.failures.empty() && coherence.coherent ? kOk : kTestFailure;
    }

    if (classify->parsed()) {
      auto taxonomy = el::classify(env->imports_closure());
      for (const auto& s : taxonomy.skipped()) {
        reporter.print(Diagnostic::Severity::Warning, std::nullopt,
                       "not classified (" + s.reason + "): " + render_axiom_functional(s.axiom, env->ontology()));
      }
      std::vector<std::pair<std::string, std::string>> rows;
      for (const auto& cls : taxonomy.classes()) {
        std::string supers;
        if (taxonomy.is_unsatisfiable(cls)) {
          supers = "owl:Nothing";
        } else {
          for (const auto& s : taxonomy.direct_superclasses(cls)) {
            supers += (supers.empty() ? "" : ",") + short_class(env->ontology(), s);
          }
        }
        rows.emplace_back(short_class(env->ontology(), cls), supers);
      }
      std::sort(rows.begin(), rows.end());
      for (const auto& [name, supers] : rows) out << name << "\t" << supers << "\n";
      return kOk;
    }

    if (skeleton->parsed()) {
      auto text = polyglot::emit_skeleton(*env, lang);
      if (out_file.empty()) {
        out << text;
      } else {
        write_file(out_file, text);
        out << "wrote " << out_file << "\n";
      }
      return kOk;
    }

    if (apply->parsed()) {
      auto table = polyglot::parse_properties(read_file(in_file), in_file);
      auto report = polyglot::apply_labels(*env, table, lang);
      nlohmann::json j = {{"added", report.added},
                          {"applied", report.applied},
                          {"missing", report.missing},
                          {"unknown", report.unknown}};
      out << j.dump(2) << "\n";
      return kOk;
    }

    if (msave->parsed() || mcheck->parsed()) {
      std::string source = memo_source;
      if (source.empty()) {
        if (env->externals().size() != 1) {
          throw UsageError("--source is required: namespace '" + ns + "' reads " +
                           std::to_string(env->externals().size()) + " external ontologies");
        }
        source = env->externals().begin()->first;
      }
      auto current = importer::memorise_save(*env, Iri(source));
      if (msave->parsed()) {
        write_file(memo_file, importer::format_memo(current));
        out << "wrote " << memo_file << " (" << current.rows.size() << " identifiers)\n";
        return kOk;
      }
      auto report = importer::memorise_check(current, importer::parse_memo(read_file(memo_file)));
      if (report.stable) out << "stable\n";
      for (const auto& d : report.deprecated) {
        out << "renamed\t" << d.old_name << "\t" << d.new_name << "\t" << d.iri.str() << "\n";
      }
      for (const auto& v : report.vanished) out << "vanished\t" << v.str() << "\n";
      return kOk;
    }

    if (doc->parsed()) {
      Entity e = env->resolve(doc_name, SourceLocation{"<command line>", 1, 1});
      reporter.flush(session);
      auto label = annotation_text(*env, e.iri, vocab::rdfs_label());
      auto comment = annotation_text(*env, e.iri, vocab::rdfs_comment());
      out << (label ? *label : doc_name) << "\n";
      if (comment) out << *comment << "\n";
      return kOk;
    }
  } catch (const UsageError& e) {
    reporter.flush(session);
    err << "error: " << e.what() << "\n" << app.help();
    return kCompileError;
  } catch (const Error& e) {
    reporter.flush(session);
    reporter.print(Diagnostic::Severity::Error, e.where(), std::string(to_string(e.code())) + ": " + e.what());
    return e.code() == ErrorCode::IoError || e.code() == ErrorCode::NamespaceNotFound ? kIoError
                                                                                      : kCompileError;
  } catch (const fs::filesystem_error& e) {
    reporter.print(Diagnostic::Severity::Error, std::nullopt, e.what());
    return kIoError;
  }
  return kCompileError;
}

}  // namespace ontoforge::cli
