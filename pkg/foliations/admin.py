from django.contrib import admin
from .models import VerificationRun, ClaimResult


class ClaimResultInline(admin.TabularInline):
    model = ClaimResult
    extra = 0
    fields = ("claim_id", "anchor", "status", "evidence")


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ("id", "command", "exit_status", "deterministic", "created_at")
    search_fields = ("command",)
    list_filter = ("exit_status", "deterministic", "created_at")
    inlines = [ClaimResultInline]


@admin.register(ClaimResult)
class ClaimResultAdmin(admin.ModelAdmin):
    list_display = ("id", "run", "claim_id", "status")
    search_fields = ("claim_id", "anchor")
    list_filter = ("status",)
