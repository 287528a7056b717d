from django.urls import path
from . import views

app_name = 'foliations'

urlpatterns = [
    # Reports
    path("verify/<str:model>/", views.verify_view, name="verify"),
    path("classify-lambda/<int:n>/", views.classify_lambda_view, name="classify_lambda"),
    path("cycle-feasible/<int:k>/<str:l>/", views.cycle_feasible_view, name="cycle_feasible"),

    # Stored runs
    path("runs/", views.runs_view, name="runs"),
    path("runs/<int:run_id>/", views.run_detail_view, name="run_detail"),
    path("runs/<int:run_id>/pdf/", views.run_pdf_view, name="run_pdf"),
]
