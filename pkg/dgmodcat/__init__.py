"""Exact module categories over finite-dimensional DG algebras: duals, Ext, and Lazard factorizations"""

__package_name__ = "dgmodcat"
__version__ = "v2026.10.1001"

__author__ = """dgmodcat developers"""
__email__ = "dgmodcat@users.noreply.github.com"
__repo_owner_github_user_name__ = "dgmodcat"
__repo_url__ = (
    f"https://github.com/{__repo_owner_github_user_name__}/{__package_name__}"
)
__repo_issues_url__ = f"{__repo_url__}/issues"
